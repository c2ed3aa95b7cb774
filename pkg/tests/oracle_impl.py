"""Straightforward reference implementation used only as a test oracle.

Works on explicit bit lists (index 0 = x0) and per-Sbox table lookups, with
no byte LUTs, rotations, or precomputation, so it shares no code paths with
the package implementation it checks.
"""

S3 = [0, 5, 3, 2, 6, 1, 4, 7]
S4 = [1, 0, 2, 4, 3, 8, 6, 13, 9, 10, 11, 14, 15, 12, 7, 5]
S5 = [0, 5, 10, 11, 20, 17, 22, 23, 9, 12, 3, 2, 13, 8, 15, 14,
      18, 21, 24, 27, 6, 1, 4, 7, 26, 29, 16, 19, 30, 25, 28, 31]

THETA = {1: (12, 31, 86), 2: (4, 23, 78), 3: (7, 15, 23)}
PI = {1: 117, 2: 117, 3: 11}
PK = {1: 29, 2: 51, 3: 107}


def int_to_bits(x, n=128):
    return [(x >> (n - 1 - j)) & 1 for j in range(n)]


def bits_to_int(bits):
    v = 0
    for b in bits:
        v = (v << 1) | b
    return v


def sbox_layer(branch, bits):
    out = [0] * 128
    if branch == 3:
        for k in range(32):
            v = bits_to_int(bits[4 * k:4 * k + 4])
            w = S4[v]
            out[4 * k:4 * k + 4] = int_to_bits(w, 4)
    else:
        for k in range(16):
            v3 = bits_to_int(bits[8 * k:8 * k + 3])
            v5 = bits_to_int(bits[8 * k + 3:8 * k + 8])
            out[8 * k:8 * k + 3] = int_to_bits(S3[v3], 3)
            out[8 * k + 3:8 * k + 8] = int_to_bits(S5[v5], 5)
    return out


def theta(branch, bits):
    t0, t1, t2 = THETA[branch]
    return [bits[(i + t0) % 128] ^ bits[(i + t1) % 128] ^ bits[(i + t2) % 128]
            for i in range(128)]


def pi(branch, bits):
    p = PI[branch]
    return [bits[(i * p) % 128] for i in range(128)]


def key_schedule(branch, master_bits, rounds):
    """master_bits: 256 bits, index 0 = k0.  Returns RK_0..RK_rounds as bit lists."""
    k0, k1 = master_bits[:128], master_bits[128:]
    if branch == 2:
        k0, k1 = k1, k0
    elif branch == 3:
        rotated = master_bits[64:] + master_bits[:64]
        k0, k1 = rotated[:128], rotated[128:]
    halves = [list(k0), list(k1)]
    pk = PK[branch]
    keys = []
    for r in range(rounds + 1):
        h = r % 2
        halves[h] = [halves[h][(pk * j) % 128] for j in range(128)]
        keys.append(list(halves[h]))
    return keys


def round_constants(branch, rounds, pi_fraction_bits):
    """pi_fraction_bits: list of fractional bits of pi-3, msb first."""
    out = []
    for r in range(rounds):
        off = 128 * (r + 12 * branch)
        out.append(pi_fraction_bits[off:off + 128])
    return out


def encrypt_branch(branch, master, plaintext, rounds, pi_fraction_bits):
    mk = int_to_bits(master, 256)
    keys = key_schedule(branch, mk, rounds)
    consts = round_constants(branch, rounds, pi_fraction_bits)
    s = [a ^ b for a, b in zip(int_to_bits(plaintext), keys[0])]
    for r in range(1, rounds + 1):
        s = sbox_layer(branch, s)
        s = theta(branch, s)
        s = pi(branch, s)
        s = [a ^ b ^ c for a, b, c in zip(s, keys[r], consts[r - 1])]
    return bits_to_int(s)


def encrypt_prf(master, plaintext, rounds, pi_fraction_bits):
    out = 0
    for branch in (1, 2, 3):
        out ^= encrypt_branch(branch, master, plaintext, rounds, pi_fraction_bits)
    return out
