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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "semdns/bits.hpp"

namespace semdns {

/// WGS84 coordinate in degrees.
struct GeoPoint {
  double latitude = 0.0;   // [-90, +90]
  double longitude = 0.0;  // [-180, +180]

  /// Throws Errc::range for out-of-bounds or non-finite coordinates.
  void validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const noexcept { return (lo + hi) / 2.0; }
  double half_width() const noexcept { return (hi - lo) / 2.0; }
  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  bool strictly_contains(const Interval& inner) const noexcept {
    return inner.lo >= lo && inner.hi <= hi && (inner.lo > lo || inner.hi < hi);
  }
};

inline constexpr Interval kLatitudeRange{-90.0, 90.0};
inline constexpr Interval kLongitudeRange{-180.0, 180.0};

/// Rectangle denoted by a geohash; decoding reports its center.
struct GeoCell {
  Interval lat;
  Interval lng;

  GeoPoint center() const noexcept { return {lat.mid(), lng.mid()}; }
  double lat_error() const noexcept { return lat.half_width(); }
  double lng_error() const noexcept { return lng.half_width(); }
  bool contains(const GeoPoint& p) const noexcept {
    return lat.contains(p.latitude) && lng.contains(p.longitude);
  }
};

struct GeohashSplit {
  unsigned lat_bits = 0;
  unsigned lng_bits = 0;
};

inline constexpr std::size_t kMaxGeohashLength = 12;

/// Longitude takes the extra bit when the total is odd.
GeohashSplit geohash_bit_split(std::size_t length_chars) noexcept;

/// Interval halving: bit i is 1 when the value lies in the upper half
/// (a value exactly on the midpoint goes up).
BitString coord_to_bits(double value, Interval range, unsigned nbits);
Interval bits_to_interval(const BitString& bits, Interval range);

/// Morton interleave starting with longitude: lng, lat, lng, lat, ...
BitString interleave(const BitString& lat_bits, const BitString& lng_bits);
/// Inverse of interleave; returns {lat_bits, lng_bits}.
std::pair<BitString, BitString> deinterleave(const BitString& bits);

/// Cell described by an interleaved coordinate bit string.
GeoCell decode_interleaved(const BitString& bits);

std::string encode_geohash(GeoPoint p, std::size_t length_chars);
GeoCell decode_geohash(std::string_view label);

/// 64-bit DevEUI-sized identifier: 5-bit Context-3 id, then 59 interleaved
/// coordinate bits (30 longitude, 29 latitude).
struct GeoIdentifier64 {
  std::uint64_t value = 0;

  std::uint8_t context_id() const noexcept { return static_cast<std::uint8_t>(value >> 59); }
  BitString bits() const { return BitString::from_uint(value, 64); }
  BitString coordinate_bits() const { return bits().slice(5, 59); }

  friend bool operator==(const GeoIdentifier64&, const GeoIdentifier64&) = default;
};

GeoIdentifier64 make_geo_identifier(GeoPoint p);
GeoCell decode_geo_identifier(GeoIdentifier64 id);

/// Appends one zero bit (65 bits) and renders 13 symbols.
std::string geo_identifier_to_label(GeoIdentifier64 id);
/// Requires 13 symbols and a zero padding bit.
GeoIdentifier64 geo_identifier_from_label(std::string_view label);

}  // namespace semdns
