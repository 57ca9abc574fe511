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

#include <cmath>
#include <random>

#include "doctest.h"
#include "semdns/error.hpp"
#include "semdns/geo.hpp"

using namespace semdns;

// Frozen values come from tests/oracles/geohash_oracle.py (exact rational
// interval halving, independent of this library).

TEST_CASE("coord_to_bits") {
  CHECK(coord_to_bits(-90.0, kLatitudeRange, 17) == BitString::from_uint(0, 17));
  const auto one = coord_to_bits(45.0, kLatitudeRange, 1);
  CHECK(one.to_string() == "1");
  CHECK(bits_to_interval(one, kLatitudeRange).mid() == 45.0);
  // 12-bit latitude of ezs42.
  CHECK(deinterleave(b32_decode("ezs42")).first.to_string() == "101111001001");
  CHECK_THROWS_AS(coord_to_bits(90.5, kLatitudeRange, 3), Error);
  CHECK_THROWS_AS(coord_to_bits(std::nan(""), kLatitudeRange, 3), Error);
  // Midpoint ties go to the upper half.
  CHECK(coord_to_bits(0.0, kLongitudeRange, 2).to_string() == "10");
}

TEST_CASE("interleave") {
  const auto lat = BitString::from_string("101111001001");
  const auto lng = BitString::from_string("0111110000000");
  const auto mixed = interleave(lat, lng);
  CHECK(mixed.to_string() == "0110111111110000010000010");
  CHECK(interleave(BitString{}, BitString::from_string("1")).to_string() == "1");
  CHECK_THROWS_AS(interleave(lat, BitString::from_string("01")), Error);
  CHECK_THROWS_AS(interleave(lng, lat), Error);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    BitString a, b;
    const auto n = rng() % 40;
    for (std::size_t k = 0; k < n; ++k) a.push_back(rng() & 1U);
    for (std::size_t k = 0; k < n + (rng() & 1U); ++k) b.push_back(rng() & 1U);
    const auto [la, lb] = deinterleave(interleave(a, b));
    CHECK(la == a);
    CHECK(lb == b);
  }
}

TEST_CASE("encode_geohash") {
  CHECK(encode_geohash({40.689167, -74.044444}, 12) == "dr5r7p4rx6kz");
  CHECK(encode_geohash({0.0, 0.0}, 1) == "s");
  CHECK(encode_geohash({40.689167, -74.044444}, 7) == "dr5r7p4");
  CHECK(encode_geohash({10.0, 180.0}, 6) == encode_geohash({10.0, -180.0}, 6));
  CHECK_THROWS_AS(encode_geohash({91.0, 0.0}, 5), Error);
  CHECK_THROWS_AS(encode_geohash({0.0, 0.0}, 0), Error);
  CHECK_THROWS_AS(encode_geohash({0.0, 0.0}, 13), Error);
}

TEST_CASE("decode_geohash") {
  const auto cell = decode_geohash("dr5r7p4");
  CHECK(cell.center().latitude == doctest::Approx(40.68855285644531).epsilon(1e-12));
  CHECK(cell.center().longitude == doctest::Approx(-74.04441833496094).epsilon(1e-12));
  CHECK(std::abs(cell.center().latitude - 40.69) < 0.005);
  CHECK(std::abs(cell.center().longitude - -74.04) < 0.005);

  const auto ezs = decode_geohash("ezs42");
  CHECK(ezs.lat_error() == 0.02197265625);
  CHECK(ezs.lng_error() == 0.02197265625);
  CHECK(ezs.center().latitude == 42.60498046875);
  CHECK(ezs.center().longitude == -5.60302734375);

  const auto s = decode_geohash("S");
  CHECK(s.center().latitude == 22.5);
  CHECK(s.center().longitude == 22.5);
  CHECK(s.lat_error() == 22.5);
  CHECK(s.lng_error() == 22.5);

  CHECK_THROWS_AS(decode_geohash("dr5a"), Error);
  CHECK_THROWS_AS(decode_geohash(""), Error);
}

TEST_CASE("bit split and error halving per length") {
  const unsigned lat_bits[] = {2, 5, 7, 10, 12, 15, 17, 20, 22, 25, 27, 30};
  const unsigned lng_bits[] = {3, 5, 8, 10, 13, 15, 18, 20, 23, 25, 28, 30};
  for (std::size_t len = 1; len <= 12; ++len) {
    const auto split = geohash_bit_split(len);
    CHECK(split.lat_bits == lat_bits[len - 1]);
    CHECK(split.lng_bits == lng_bits[len - 1]);
    const auto cell = decode_geohash(std::string(len, 'u'));
    CHECK(cell.lat_error() == 90.0 / std::ldexp(1.0, static_cast<int>(split.lat_bits)));
    CHECK(cell.lng_error() == 180.0 / std::ldexp(1.0, static_cast<int>(split.lng_bits)));
  }
}

TEST_CASE("property: encode/decode fixpoint, nesting, truncation, Morton consistency") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lat(-90.0, 90.0), lng(-180.0, 180.0);
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint p{lat(rng), lng(rng)};
    const auto full = encode_geohash(p, 12);
    for (std::size_t len = 1; len <= 12; ++len) {
      const auto label = encode_geohash(p, len);
      CHECK(full.rfind(label, 0) == 0);
      const auto cell = decode_geohash(label);
      CHECK(cell.contains(p));
      CHECK(encode_geohash(cell.center(), len) == label);
      if (len > 1) {
        const auto parent = decode_geohash(label.substr(0, len - 1));
        const bool nested = parent.lat.contains(cell.lat.lo) && parent.lat.contains(cell.lat.hi) &&
                            parent.lng.contains(cell.lng.lo) && parent.lng.contains(cell.lng.hi);
        const bool smaller = parent.lat.strictly_contains(cell.lat) ||
                             parent.lng.strictly_contains(cell.lng);
        CHECK(nested);
        CHECK(smaller);
      }
      const auto split = geohash_bit_split(len);
      const auto composed =
          b32_encode(interleave(coord_to_bits(p.latitude, kLatitudeRange, split.lat_bits),
                                coord_to_bits(p.longitude, kLongitudeRange, split.lng_bits)));
      CHECK(composed == label);
    }
  }
}

TEST_CASE("geo identifier") {
  const auto liberty = make_geo_identifier({40.689167, -74.044444});
  CHECK(liberty.value == 0x1b2e5b9ea4bf4d2fULL);
  CHECK(liberty.context_id() == 3);
  CHECK(liberty.bits().size() == 64);
  const auto label = geo_identifier_to_label(liberty);
  CHECK(label == "3dr5r7p4rx6ky");
  // The context occupies exactly one symbol, so the coordinate symbols line up
  // with the geohash except for the final (29th) latitude bit.
  CHECK(label.substr(1, 11) == encode_geohash({40.689167, -74.044444}, 12).substr(0, 11));
  CHECK(geo_identifier_from_label(label) == liberty);

  const auto corner = make_geo_identifier({-90.0, -180.0});
  CHECK(corner.coordinate_bits() == BitString::from_uint(0, 59));
  CHECK(geo_identifier_to_label(GeoIdentifier64{0}) == "0000000000000");
  CHECK(geo_identifier_to_label(make_geo_identifier({0.0, 0.0})) == "3s00000000000");

  CHECK_THROWS_AS(geo_identifier_from_label("3dr5r7p4rx6kz"), Error);  // padding bit set
  CHECK_THROWS_AS(geo_identifier_from_label("3dr5r"), Error);
  CHECK_THROWS_AS(make_geo_identifier({0.0, 200.0}), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lat(-90.0, 90.0), lng(-180.0, 180.0);
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint p{lat(rng), lng(rng)};
    const auto id = make_geo_identifier(p);
    const auto cell = decode_geo_identifier(id);
    CHECK(cell.contains(p));
    CHECK(cell.lng_error() <= 180.0 / std::ldexp(1.0, 30));
    CHECK(geo_identifier_from_label(geo_identifier_to_label(id)) == id);
    GeoIdentifier64 random{rng() };
    CHECK(geo_identifier_from_label(geo_identifier_to_label(random)) == random);
  }
}
