#!/usr/bin/env python3
"""Reference digests for the self-certifying name tests (pycryptodome, not OpenSSL)."""
from Crypto.Hash import RIPEMD160, SHA256, SHA3_256
A="0123456789bcdefghjkmnpqrstuvwxyz"
def b32(b):
    n=int.from_bytes(b,'big'); bits=len(b)*8; assert bits%5==0
    return ''.join(A[(n>>(bits-5*(i+1)))&31] for i in range(bits//5))
keys={"abc":b"abc","seq33":bytes(range(33)),"k65":bytes([4])+bytes((i*7+3)&255 for i in range(64))}
for k,v in keys.items():
    a=RIPEMD160.new(SHA256.new(v).digest()).digest()
    e=SHA3_256.new(a).digest()[:8]
    print(k,a.hex(),b32(a),e.hex())
