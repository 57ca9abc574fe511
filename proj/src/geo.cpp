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

#include "semdns/geo.hpp"

#include <cmath>

#include "semdns/context.hpp"
#include "semdns/error.hpp"

namespace semdns {

namespace {

GeoPoint normalized(GeoPoint p) {
  p.validate();
  if (p.longitude == 180.0) p.longitude = -180.0;
  return p;
}

}  // namespace

void GeoPoint::validate() const {
  if (!std::isfinite(latitude) || latitude < -90.0 || latitude > 90.0) {
    throw Error(Errc::range, "latitude " + std::to_string(latitude) + " outside [-90, 90]");
  }
  if (!std::isfinite(longitude) || longitude < -180.0 || longitude > 180.0) {
    throw Error(Errc::range, "longitude " + std::to_string(longitude) + " outside [-180, 180]");
  }
}

GeohashSplit geohash_bit_split(std::size_t length_chars) noexcept {
  const auto total = static_cast<unsigned>(5 * length_chars);
  return {total / 2, total - total / 2};
}

BitString coord_to_bits(double value, Interval range, unsigned nbits) {
  if (!std::isfinite(value) || !range.contains(value)) {
    throw Error(Errc::range, "coordinate " + std::to_string(value) + " outside [" +
                                 std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
  }
  BitString out;
  for (unsigned i = 0; i < nbits; ++i) {
    const double mid = range.mid();
    if (value >= mid) {
      out.push_back(true);
      range.lo = mid;
    } else {
      out.push_back(false);
      range.hi = mid;
    }
  }
  return out;
}

Interval bits_to_interval(const BitString& bits, Interval range) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double mid = range.mid();
    (bits[i] ? range.lo : range.hi) = mid;
  }
  return range;
}

BitString interleave(const BitString& lat_bits, const BitString& lng_bits) {
  if (lng_bits.size() != lat_bits.size() && lng_bits.size() != lat_bits.size() + 1) {
    throw Error(Errc::invalid_argument,
                "longitude must have as many bits as latitude or one more (got " +
                    std::to_string(lng_bits.size()) + " and " + std::to_string(lat_bits.size()) + ")");
  }
  BitString out;
  for (std::size_t i = 0; i < lng_bits.size(); ++i) {
    out.push_back(lng_bits[i]);
    if (i < lat_bits.size()) out.push_back(lat_bits[i]);
  }
  return out;
}

std::pair<BitString, BitString> deinterleave(const BitString& bits) {
  BitString lat, lng;
  for (std::size_t i = 0; i < bits.size(); ++i) (i % 2 == 0 ? lng : lat).push_back(bits[i]);
  return {std::move(lat), std::move(lng)};
}

GeoCell decode_interleaved(const BitString& bits) {
  const auto [lat, lng] = deinterleave(bits);
  return {bits_to_interval(lat, kLatitudeRange), bits_to_interval(lng, kLongitudeRange)};
}

std::string encode_geohash(GeoPoint p, std::size_t length_chars) {
  if (length_chars < 1 || length_chars > kMaxGeohashLength) {
    throw Error(Errc::range, "geohash length must be 1.." + std::to_string(kMaxGeohashLength));
  }
  p = normalized(p);
  const auto split = geohash_bit_split(length_chars);
  return b32_encode(interleave(coord_to_bits(p.latitude, kLatitudeRange, split.lat_bits),
                               coord_to_bits(p.longitude, kLongitudeRange, split.lng_bits)));
}

GeoCell decode_geohash(std::string_view label) {
  if (label.empty() || label.size() > kMaxGeohashLength) {
    throw Error(Errc::range, "geohash length must be 1.." + std::to_string(kMaxGeohashLength));
  }
  return decode_interleaved(b32_decode(label));
}

GeoIdentifier64 make_geo_identifier(GeoPoint p) {
  p = normalized(p);
  constexpr unsigned kLngBits = (kGeoCoordinateBits + 1) / 2;
  constexpr unsigned kLatBits = kGeoCoordinateBits / 2;
  BitString bits = BitString::from_uint(kGeoContextId, 5);
  bits.append(interleave(coord_to_bits(p.latitude, kLatitudeRange, kLatBits),
                         coord_to_bits(p.longitude, kLongitudeRange, kLngBits)));
  return {bits.to_uint(0, 64)};
}

GeoCell decode_geo_identifier(GeoIdentifier64 id) { return decode_interleaved(id.coordinate_bits()); }

std::string geo_identifier_to_label(GeoIdentifier64 id) {
  BitString bits = id.bits();
  bits.push_back(false);
  return b32_encode(bits);
}

GeoIdentifier64 geo_identifier_from_label(std::string_view label) {
  if (label.size() != 13) {
    throw Error(Errc::invalid_argument, "geo identifier labels have 13 symbols, got " +
                                            std::to_string(label.size()));
  }
  const BitString bits = b32_decode(label);
  if (bits[64]) throw Error(Errc::padding, "geo identifier padding bit is not zero");
  return {bits.to_uint(0, 64)};
}

}  // namespace semdns
