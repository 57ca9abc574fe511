/*
 * Copyright 2026 The semdns Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the semdns library.
 *
 * Every function returns a semdns_status; on failure a description of the
 * last error on the calling thread is available from semdns_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * released with semdns_string_free(). Handles are released with their
 * matching *_free function; passing NULL to a *_free function is allowed.
 */
#ifndef SEMDNS_SEMDNS_H
#define SEMDNS_SEMDNS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SEMDNS_API __attribute__((visibility("default")))
#else
#define SEMDNS_API
#endif

typedef enum semdns_status {
  SEMDNS_OK = 0,
  SEMDNS_E_INVALID_ARGUMENT = 1,
  SEMDNS_E_PADDING = 2,
  SEMDNS_E_DECODE = 3,
  SEMDNS_E_RANGE = 4,
  SEMDNS_E_UNKNOWN_CONTEXT = 5,
  SEMDNS_E_MISALIGNED = 6,
  SEMDNS_E_DUPLICATE = 7,
  SEMDNS_E_NOT_FOUND = 8,
  SEMDNS_E_PARSE = 9,
  SEMDNS_E_WIRE = 10,
  SEMDNS_E_SIZE_GUARD = 11,
  SEMDNS_E_COLLISION = 12,
  SEMDNS_E_POLICY = 13,
  SEMDNS_E_REFUSED = 14,
  SEMDNS_E_IO = 15,
  SEMDNS_E_NETWORK = 16,
  SEMDNS_E_TIMEOUT = 17,
  SEMDNS_E_INTERNAL = 18
} semdns_status;

SEMDNS_API const char* semdns_version(void);
SEMDNS_API const char* semdns_status_name(semdns_status status);
/* Message of the last failure on this thread; "" when none. */
SEMDNS_API const char* semdns_last_error(void);
SEMDNS_API void semdns_string_free(char* s);

/* ---- geo ---------------------------------------------------------------- */

typedef struct semdns_geo_cell {
  double latitude; /* cell center */
  double longitude;
  double lat_error; /* half-widths in degrees */
  double lng_error;
  unsigned lat_bits;
  unsigned lng_bits;
} semdns_geo_cell;

/* Geohash of 1..12 characters. */
SEMDNS_API semdns_status semdns_geohash_encode(double latitude, double longitude, unsigned length, char** out);
SEMDNS_API semdns_status semdns_geohash_decode(const char* label, semdns_geo_cell* out);
/* Interleaved, latitude and longitude bit strings ("0"/"1") of a geohash. */
SEMDNS_API semdns_status semdns_geohash_bits(const char* label, char** interleaved, char** lat_bits,
                                             char** lng_bits);
/* 64-bit geo identifier (context 3) and its 13-character label. */
SEMDNS_API semdns_status semdns_geo_identifier(double latitude, double longitude, uint64_t* value, char** label);
SEMDNS_API semdns_status semdns_geo_identifier_decode(const char* label, uint64_t* value, semdns_geo_cell* out);

/* ---- contexts ----------------------------------------------------------- */

typedef struct semdns_registry semdns_registry;

SEMDNS_API semdns_status semdns_registry_standard(semdns_registry** out);
SEMDNS_API semdns_status semdns_registry_load(const char* path, semdns_registry** out);
SEMDNS_API void semdns_registry_free(semdns_registry* registry);

/* Identifier for a tree path. Each step is a child index (all digits) or a
 * node label. Fewer steps than the tree depth give a prefix identifier. */
SEMDNS_API semdns_status semdns_encode_tree(const semdns_registry* registry, unsigned context_id,
                                            const char* const* steps, size_t step_count, char** out);
SEMDNS_API semdns_status semdns_encode_logical(uint64_t building, uint64_t floor, uint64_t room, char** out);

/* ---- self-certifying names ---------------------------------------------- */

/* 32-symbol label and EUI-64 (16 hex digits) for a public key. */
SEMDNS_API semdns_status semdns_derive_name(const uint8_t* key, size_t key_len, char** label, char** eui64);
/* *match is 1 when the label was derived from the key, else 0. */
SEMDNS_API semdns_status semdns_verify_name(const char* label, const uint8_t* key, size_t key_len, int* match);

/* ---- zones (offline) ---------------------------------------------------- */

typedef struct semdns_zone semdns_zone;

/* origin may be NULL to take it from the SOA; journal may be NULL. */
SEMDNS_API semdns_status semdns_zone_load(const char* path, const char* origin, const char* journal,
                                          semdns_zone** out);
SEMDNS_API void semdns_zone_free(semdns_zone* zone);
SEMDNS_API uint32_t semdns_zone_serial(const semdns_zone* zone);
/* Master-file text of the current records. */
SEMDNS_API semdns_status semdns_zone_export(const semdns_zone* zone, char** out);

/* ---- messages ----------------------------------------------------------- */

typedef struct semdns_message semdns_message;

typedef enum semdns_format {
  SEMDNS_FORMAT_DIG = 0,
  SEMDNS_FORMAT_JSON = 1
} semdns_format;

/* Response code name ("NOERROR", "NXDOMAIN", ...). */
SEMDNS_API const char* semdns_message_status(const semdns_message* message);
SEMDNS_API int semdns_message_rcode(const semdns_message* message);
SEMDNS_API size_t semdns_message_answer_count(const semdns_message* message);
/* Queries print like dig; transfers print one record per line. */
SEMDNS_API semdns_status semdns_message_format(const semdns_message* message, semdns_format format, char** out);
SEMDNS_API void semdns_message_free(semdns_message* message);

/* ---- server ------------------------------------------------------------- */

typedef struct semdns_server semdns_server;

/* Configuration from a JSON file (config_path) or JSON text (config_json,
 * relative paths resolved against the working directory). SEMDNS_*
 * environment variables override both. port_override >= 0 replaces the port. */
SEMDNS_API semdns_status semdns_server_create(const char* config_path, const char* config_json, int port_override,
                                              semdns_server** out);
SEMDNS_API semdns_status semdns_server_start(semdns_server* server);
SEMDNS_API uint16_t semdns_server_port(const semdns_server* server);
/* Requests shutdown; safe to call from a signal handler. */
SEMDNS_API void semdns_server_stop(semdns_server* server);
/* Blocks until the server has stopped. */
SEMDNS_API semdns_status semdns_server_wait(semdns_server* server);
SEMDNS_API void semdns_server_free(semdns_server* server);

/* ---- client ------------------------------------------------------------- */

typedef struct semdns_client semdns_client;

SEMDNS_API semdns_status semdns_client_create(const char* host, uint16_t port, unsigned timeout_ms,
                                              semdns_client** out);
SEMDNS_API void semdns_client_free(semdns_client* client);

/* type is a mnemonic such as "PTR", "ANY" or "ALL". */
SEMDNS_API semdns_status semdns_client_query(semdns_client* client, const char* name, const char* type,
                                             semdns_message** out);
SEMDNS_API semdns_status semdns_client_axfr(semdns_client* client, const char* name, semdns_message** out);
SEMDNS_API semdns_status semdns_client_ixfr(semdns_client* client, const char* name, uint32_t serial,
                                            semdns_message** out);

typedef struct semdns_registration {
  const char* zone;       /* zone origin, e.g. "_iot._udp." */
  const char* instance;   /* e.g. "temperature" */
  const char* identifier; /* e.g. "dr56" */
  const char* target;     /* e.g. "dr56.unipr.it." */
  uint16_t port;
  uint16_t priority;
  uint16_t weight;
  uint32_t ttl;
  /* Identifier label length: 0 keeps one label, -1 reads the server's
   * len= declarations, n > 0 splits into n-symbol labels. */
  int split_length;
  const char* const* txt; /* "key=value" strings */
  size_t txt_count;
} semdns_registration;

/* Sends one UPDATE with the SRV, PTR and TXT records of a device. On success
 * *changed tells whether the zone serial moved and *srv_owner (optional)
 * receives the instance owner name. A non-NOERROR answer is returned as
 * SEMDNS_E_REFUSED with the message still stored in *response when given. */
SEMDNS_API semdns_status semdns_client_register(semdns_client* client, const semdns_registration* registration,
                                                const char* secret, int* changed, char** srv_owner,
                                                semdns_message** response);
/* Replaces the key=value TXT at owner. */
SEMDNS_API semdns_status semdns_client_update_txt(semdns_client* client, const char* zone, const char* owner,
                                                  const char* key, const char* value, uint32_t ttl,
                                                  const char* secret, semdns_message** response);

/* Removes the key=value TXT at owner; *removed tells whether one existed. */
SEMDNS_API semdns_status semdns_client_delete_txt(semdns_client* client, const char* zone, const char* owner,
                                                  const char* key, const char* secret, int* removed,
                                                  semdns_message** response);

#ifdef __cplusplus
}
#endif

#endif /* SEMDNS_SEMDNS_H */
