#!/usr/bin/env python3
"""Field arithmetic on hidden values, with every oracle call itemized.

A value y in F_p is handled only through its image yP in a group of prime
order p. Linear operations (add, subtract, known-scalar multiply, equality)
come free of oracle calls; products need the Diffie-Hellman oracle, one call
per multiplication. This script walks through each operation on a small
group, prints what it cost, and finishes with a seeded spot-check against
ordinary arithmetic mod p.

Run: python demos/implicit_arithmetic.py
"""

import random

from dhpbound.groups import make_zp_additive
from dhpbound.implicit import (
    embed,
    implicit_add,
    implicit_eq,
    implicit_inv,
    implicit_mul,
    implicit_pow,
    implicit_scalar,
    implicit_sub,
)
from dhpbound.oracle import CostLedger, OracleHandle

P = 101


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


def fresh(group):
    """Oracle with a zeroed ledger attached."""
    oracle = OracleHandle(group)
    ledger = CostLedger()
    oracle.attach_ledger(ledger)
    return oracle, ledger


def show_cost(label, before, after, ok):
    calls = after.oracle_calls - before
    mark = "ok" if ok else "MISMATCH"
    print(f"  {label:34s} oracle calls: {calls:3d}   [{mark}]")


def main():
    group = make_zp_additive(P)
    oracle, ledger = fresh(group)

    banner(f"hidden-value arithmetic in F_{P}")
    y, z = 58, 77
    Y = embed(group, y)
    Z = embed(group, z)
    print(f"secrets y={y}, z={z} held only as yP and zP")

    # linear layer: no oracle involvement at all
    banner("linear operations (oracle never consulted)")
    c0 = ledger.oracle_calls
    s = implicit_add(Y, Z, ledger)
    show_cost(f"add        -> ({y}+{z}) mod {P} = {(y + z) % P}", c0,
              ledger, implicit_eq(s, embed(group, y + z)))

    c0 = ledger.oracle_calls
    dif = implicit_sub(Y, Z, ledger)
    show_cost(f"subtract   -> ({y}-{z}) mod {P} = {(y - z) % P}", c0,
              ledger, implicit_eq(dif, embed(group, y - z)))

    c0 = ledger.oracle_calls
    sc = implicit_scalar(9, Y, ledger)
    show_cost(f"scalar 9   -> (9*{y}) mod {P} = {9 * y % P}", c0,
              ledger, implicit_eq(sc, embed(group, 9 * y)))

    print(f"  running ledger: {ledger.as_dict()}")

    # products: this is where the oracle earns its keep
    banner("products and powers (one call per multiplication)")
    c0 = ledger.oracle_calls
    prod = implicit_mul(oracle, Y, Z)
    show_cost(f"multiply   -> ({y}*{z}) mod {P} = {y * z % P}", c0,
              ledger, implicit_eq(prod, embed(group, y * z)))

    for e in (2, 10, 20, 100):
        c0 = ledger.oracle_calls
        pw = implicit_pow(oracle, Y, e)
        predicted = e.bit_length() - 1 + e.bit_count()
        got = ledger.oracle_calls - c0
        ok = implicit_eq(pw, embed(group, pow(y, e, P))) and got == predicted
        show_cost(f"power e={e:<4d} (predicted {predicted} calls)", c0, ledger, ok)

    # inversion is a power with exponent p-2
    c0 = ledger.oracle_calls
    inv = implicit_inv(oracle, Y)
    one = implicit_mul(oracle, inv, Y)
    show_cost(f"invert and re-multiply -> 1", c0, ledger,
              implicit_eq(one, embed(group, 1)))
    print(f"  final ledger: {ledger.as_dict()}")

    # the exact count floor(log2 e) + popcount(e) beats the rounder
    # 2*floor(log2 e) except when e is all ones in binary
    banner("call count vs exponent shape")
    print(f"  {'e':>6s} {'binary':>10s} {'exact':>6s} {'2*floor(log2 e)':>16s}")
    for e in (8, 12, 15, 24, 31):
        exact = e.bit_length() - 1 + e.bit_count()
        rough = 2 * (e.bit_length() - 1)
        tag = "  <- all ones, exceeds the round bound" if exact > rough else ""
        print(f"  {e:6d} {bin(e)[2:]:>10s} {exact:6d} {rough:16d}{tag}")

    # seeded spot check on random pairs
    banner("spot check: 200 random pairs vs plain arithmetic mod p")
    rng = random.Random(20260819)
    oracle, ledger = fresh(group)
    bad = 0
    for _ in range(200):
        a = rng.randrange(1, P)
        b = rng.randrange(1, P)
        A, B = embed(group, a), embed(group, b)
        checks = (
            (implicit_add(A, B, ledger), (a + b) % P),
            (implicit_sub(A, B, ledger), (a - b) % P),
            (implicit_mul(oracle, A, B), a * b % P),
            (implicit_inv(oracle, A), pow(a, P - 2, P)),
        )
        for got, want in checks:
            if not implicit_eq(got, embed(group, want)):
                bad += 1
    print(f"  mismatches: {bad} / 800 operations")
    print(f"  total spent: {ledger.as_dict()}")
    print()
    print("done" if bad == 0 else "FAILED")


if __name__ == "__main__":
    main()
