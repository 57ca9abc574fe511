#!/usr/bin/env python3
"""Reference geohash computations used to freeze expected values in the C++ tests.

Written independently of the library: plain interval halving with exact
rational arithmetic, no shared code paths.
"""
from fractions import Fraction as F

ALPHABET = "0123456789bcdefghjkmnpqrstuvwxyz"


def dichotomy(value, lo, hi, nbits):
    value, lo, hi = F(value), F(lo), F(hi)
    out = []
    for _ in range(nbits):
        mid = (lo + hi) / 2
        if value >= mid:
            out.append(1)
            lo = mid
        else:
            out.append(0)
            hi = mid
    return out


def geohash(lat, lng, length):
    nbits = 5 * length
    lng_bits = dichotomy(F(str(lng)), -180, 180, (nbits + 1) // 2)
    lat_bits = dichotomy(F(str(lat)), -90, 90, nbits // 2)
    bits = []
    for i in range(nbits):
        bits.append(lng_bits[i // 2] if i % 2 == 0 else lat_bits[i // 2])
    return "".join(ALPHABET[int("".join(map(str, bits[i:i + 5])), 2)]
                   for i in range(0, nbits, 5)), lat_bits, lng_bits


def decode(label):
    bits = []
    for c in label:
        v = ALPHABET.index(c)
        bits += [(v >> (4 - k)) & 1 for k in range(5)]
    lat = [F(-90), F(90)]
    lng = [F(-180), F(180)]
    for i, b in enumerate(bits):
        iv = lng if i % 2 == 0 else lat
        mid = (iv[0] + iv[1]) / 2
        iv[0 if b else 1] = mid
    return lat, lng


def geo_identifier_label(lat, lng):
    _, lat_bits, lng_bits = geohash(lat, lng, 12)
    bits = [0, 0, 0, 1, 1]  # context 3
    lat_bits = lat_bits[:29]
    for i in range(59):
        bits.append(lng_bits[i // 2] if i % 2 == 0 else lat_bits[i // 2])
    value = int("".join(map(str, bits)), 2)
    bits.append(0)
    label = "".join(ALPHABET[int("".join(map(str, bits[i:i + 5])), 2)]
                    for i in range(0, 65, 5))
    return value, label


if __name__ == "__main__":
    print("liberty12", geohash(40.689167, -74.044444, 12)[0])
    for L in ("dr5r7p4", "ezs42", "s"):
        lat, lng = decode(L)
        print(L, "center", float(sum(lat) / 2), float(sum(lng) / 2),
              "err", float((lat[1] - lat[0]) / 2), float((lng[1] - lng[0]) / 2))
    print("origin1", geohash(0, 0, 1)[0])
    v, lbl = geo_identifier_label(40.689167, -74.044444)
    print("liberty-geoid", hex(v), lbl)
    v, lbl = geo_identifier_label(0, 0)
    print("origin-geoid", hex(v), lbl)
