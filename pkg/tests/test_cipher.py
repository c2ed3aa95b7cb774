import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_impl
from gleeok_analysis import pi_digits
from gleeok_analysis.cipher import (
    BranchCipher,
    PrfCipher,
    RoundSpan,
    apply_pi,
    apply_sbox_layer,
    apply_theta,
    derive_round_constants,
    derive_round_keys,
    encrypt_prf,
)
from gleeok_analysis.params import PI, THETA, PiParam, ThetaParams
from gleeok_analysis.state import Branch, from_hex, to_hex

rng = random.Random(0xC1F)

state128 = st.integers(min_value=0, max_value=(1 << 128) - 1)
key256 = st.integers(min_value=0, max_value=(1 << 256) - 1)


@pytest.fixture(scope="module")
def pi_bits():
    frac = pi_digits._fraction_int()
    return [(frac >> (pi_digits.EMBEDDED_BITS - 1 - i)) & 1 for i in range(pi_digits.EMBEDDED_BITS)]


# ------------------------------------------------------------- components

def test_hex_roundtrip():
    for _ in range(200):
        x = rng.getrandbits(128)
        assert from_hex(to_hex(x)) == x
    assert to_hex(0) == "0" * 32


def test_sbox_layer_branch3_zero():
    out = apply_sbox_layer(Branch.B3, 0)
    assert out == from_hex("11111111111111111111111111111111")


def test_sbox_layer_branch1_zero():
    assert apply_sbox_layer(Branch.B1, 0) == 0
    assert apply_sbox_layer(Branch.B2, 0) == 0


@pytest.mark.parametrize("branch", list(Branch))
def test_sbox_layer_inverse_roundtrip(branch):
    for _ in range(1000):
        x = rng.getrandbits(128)
        assert apply_sbox_layer(branch, apply_sbox_layer(branch, x), inverse=True) == x


def test_theta_single_bit():
    # only x0 set -> bits i with i + t in {0} mod 128, i.e. i = -t mod 128
    x = 1 << 127
    out = apply_theta(ThetaParams(7, 15, 23), x)
    expect = {(-t) % 128 for t in (7, 15, 23)}
    got = {j for j in range(128) if (out >> (127 - j)) & 1}
    assert got == expect == {105, 113, 121}


def test_theta_zero_and_linearity():
    params = THETA[Branch.B1]
    assert apply_theta(params, 0) == 0
    for _ in range(1000):
        x, y = rng.getrandbits(128), rng.getrandbits(128)
        assert apply_theta(params, x ^ y) == apply_theta(params, x) ^ apply_theta(params, y)


def test_pi_examples():
    # input bit 11 set -> output bit 1 set (1 * 11 = 11)
    out = apply_pi(PiParam(11), 1 << (127 - 11))
    assert out == 1 << (127 - 1)
    # index 0 is a fixed point
    assert apply_pi(PiParam(117), 1 << 127) == 1 << 127
    ones = (1 << 128) - 1
    assert apply_pi(PiParam(11), ones) == ones


@pytest.mark.parametrize("branch", list(Branch))
def test_pi_is_permutation(branch):
    p = PI[branch].p
    seen = {(i * p) % 128 for i in range(128)}
    assert len(seen) == 128


def test_theta_matrix_full_rank():
    # exact bijectivity of theta for all three original parameter sets
    for branch in Branch:
        params = THETA[branch]
        basis = []
        for j in range(128):
            basis.append(apply_theta(params, 1 << (127 - j)))
        # gaussian elimination over GF(2)
        rank = 0
        rows = list(basis)
        for bit in range(127, -1, -1):
            pivot = next((r for r in rows if (r >> bit) & 1), None)
            if pivot is None:
                continue
            rows.remove(pivot)
            rows = [r ^ pivot if (r >> bit) & 1 else r for r in rows]
            rank += 1
        assert rank == 128


# ------------------------------------------------------------ key schedule

def test_round_key_first_bits_branch1():
    # RK_0 bit x1 = master bit k_29 after one in-place permutation
    master = 1 << (255 - 29)
    rk = derive_round_keys(master, Branch.B1, 0)[0]
    assert (rk >> (127 - 1)) & 1 == 1
    assert bin(rk).count("1") == 1


def test_initial_half_arrangements():
    mk_bits = [rng.getrandbits(1) for _ in range(256)]
    master = int("".join(map(str, mk_bits)), 2)
    keys = oracle_impl.key_schedule(2, mk_bits, 0)
    ours = derive_round_keys(master, Branch.B2, 0)
    assert oracle_impl.bits_to_int(keys[0]) == ours[0]
    keys3 = oracle_impl.key_schedule(3, mk_bits, 0)
    ours3 = derive_round_keys(master, Branch.B3, 0)
    assert oracle_impl.bits_to_int(keys3[0]) == ours3[0]


def test_key_schedule_against_oracle():
    for branch in Branch:
        for _ in range(20):
            master = rng.getrandbits(256)
            mk_bits = oracle_impl.int_to_bits(master, 256)
            want = oracle_impl.key_schedule(int(branch), mk_bits, 12)
            got = derive_round_keys(master, branch, 12)
            assert [oracle_impl.bits_to_int(k) for k in want] == got


def test_key_perm_bijective():
    for pk in (29, 51, 107):
        assert len({(pk * j) % 128 for j in range(128)}) == 128


# --------------------------------------------------------- round constants

def test_first_window_value():
    assert derive_round_constants(Branch.B1, 1)[0] == pi_digits.window128(128 * 12)
    assert pi_digits.window128(0) == from_hex("243F6A8885A308D313198A2E03707344")


def test_constants_distinct_and_sized():
    seen = set()
    for branch in Branch:
        for rc in derive_round_constants(branch, 12):
            assert 0 <= rc < (1 << 128)
            seen.add(rc)
    assert len(seen) == 36


def test_constants_window_overflow():
    with pytest.raises(ValueError):
        derive_round_constants(Branch.B3, 13)


def test_pi_expansion_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.prec = pi_digits.EMBEDDED_BITS + 64
    want = int(mpmath.floor((mpmath.mp.pi - 3) * mpmath.mpf(2) ** pi_digits.EMBEDDED_BITS))
    assert pi_digits._fraction_int() == want


# ------------------------------------------------------------- encryption

def test_branch_encrypt_against_oracle(pi_bits):
    for branch in Branch:
        for _ in range(35):
            master = rng.getrandbits(256)
            pt = rng.getrandbits(128)
            want = oracle_impl.encrypt_branch(int(branch), master, pt, 12, pi_bits)
            got = BranchCipher(branch, master).encrypt(pt)
            assert got == want, f"branch {branch}"


def test_prf_against_oracle(pi_bits):
    for _ in range(10):
        master = rng.getrandbits(256)
        pt = rng.getrandbits(128)
        assert encrypt_prf(master, pt, 12) == oracle_impl.encrypt_prf(master, pt, 12, pi_bits)


def test_prf_equals_xor_of_branches():
    for _ in range(100):
        master = rng.getrandbits(256)
        pt = rng.getrandbits(128)
        rounds = rng.randrange(1, 13)
        want = 0
        for b in Branch:
            want ^= BranchCipher(b, master, rounds).encrypt(pt)
        assert PrfCipher(master, rounds).encrypt(pt) == want


def test_prf_deterministic_and_key_sensitive():
    master = rng.getrandbits(256)
    pt = rng.getrandbits(128)
    assert encrypt_prf(master, pt, 12) == encrypt_prf(master, pt, 12)
    distinct = sum(
        encrypt_prf(rng.getrandbits(256), pt, 12) != encrypt_prf(rng.getrandbits(256), pt, 12)
        for _ in range(100)
    )
    assert distinct >= 99


@settings(max_examples=60, deadline=None)
@given(key256, state128, st.integers(min_value=0, max_value=24), st.integers(min_value=0, max_value=24))
def test_span_composition(master, pt, a, b):
    lo, hi = sorted((a, b))
    bc = BranchCipher(Branch.B3, master)
    whole = bc.encrypt(pt, RoundSpan(0, hi, whitening=True))
    first = bc.encrypt(pt, RoundSpan(0, lo, whitening=True))
    assert bc.encrypt(first, RoundSpan(lo, hi)) == whole


def test_empty_span_identity():
    bc = BranchCipher(Branch.B1, rng.getrandbits(256))
    pt = rng.getrandbits(128)
    assert bc.encrypt(pt, RoundSpan(4, 4)) == pt


def test_branch_bijective_no_collisions():
    bc = BranchCipher(Branch.B2, rng.getrandbits(256))
    seen = set()
    for _ in range(1 << 12):
        seen.add(bc.encrypt(rng.getrandbits(128)))
    assert len(seen) == 1 << 12
