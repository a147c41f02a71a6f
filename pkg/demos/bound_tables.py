#!/usr/bin/env python3
"""Lower-bound tables for the shipped SECG curve database, with grading.

For each curve the database stores the prime subgroup order p, a chosen
divisor d of p-1, and four reference cells. This script recomputes every
cell from p and d alone (log2 sqrt(p), log2 of the group-operation count M,
log2 of the oracle-call count n, and the implied Diffie-Hellman lower bound
log2 T_DH = log2(sqrt(p)/n)), grades the result against the stored cells,
and walks through the records that earn flags.

Run: python demos/bound_tables.py
"""

from collections import Counter

from dhpbound.bounds import (
    MATCH_TOL,
    VERDICT_OK,
    load_database,
    rows_exit_code,
    table_rows,
)


def banner(title):
    print()
    print("=" * 78)
    print(title)
    print("=" * 78)


def fmt(v):
    return "-" if v is None else f"{v:.2f}"


def print_section(rows, kind, label):
    print()
    print(f"--- {label} ---")
    print(f"  {'name':12s} {'sqrt':>8s} {'M':>8s} {'n':>6s} {'T_DH':>8s} "
          f"{'worst|delta|':>12s} {'verdict':<20s} flags")
    for row in rows:
        if row.field_kind != kind:
            continue
        if not row.available:
            print(f"  {row.name:12s} {'-':>8s} {'-':>8s} {'-':>6s} {'-':>8s} "
                  f"{'-':>12s} {row.verdict:<20s} {','.join(row.flags) or '-'}")
            continue
        worst = max(abs(x) for x in row.deltas if x is not None)
        print(f"  {row.name:12s} {fmt(row.log2_sqrt_p):>8s} {fmt(row.log2_M):>8s} "
              f"{fmt(row.log2_n):>6s} {fmt(row.log2_TDH):>8s} {worst:12.4f} "
              f"{row.verdict:<20s} {','.join(row.flags) or '-'}")


def main():
    db = load_database()
    rows = table_rows(db)

    banner(f"recomputed bound tables for {len(rows)} standardized curves")
    print_section(rows, "prime", "prime-field curves")
    print_section(rows, "binary", "binary-field curves")

    banner("grading summary")
    counts = Counter(row.verdict for row in rows)
    for verdict, k in sorted(counts.items()):
        print(f"  {verdict:<20s} {k}")
    graded = [r for r in rows if r.available]
    worst_ok = max(
        max(abs(x) for x in r.deltas if x is not None)
        for r in graded
        if r.verdict == VERDICT_OK
    )
    print(f"  worst clean-row delta: {worst_ok:.4f} (tolerance {MATCH_TOL})")
    print(f"  table exit code analog: {rows_exit_code(rows)} "
          f"(0 all clean, 2 annotated or small discrepancy, 1 hard failure)")

    banner("records carrying notes")
    for rec in db:
        for note in rec.annotations:
            print(f"  {rec.name}: {note}")
            print()

    # the one annotated numeric mismatch, prosecuted mechanically
    banner("the SECT239K1 sqrt cell, checked against its own row")
    rec = next(r for r in db if r.name == "SECT239K1")
    row = next(r for r in rows if r.name == "SECT239K1")
    printed_sum = rec.expected_log2_TDH + rec.expected_log2_n
    computed_sum = row.log2_TDH + row.log2_n
    print(f"  every consistent row satisfies T_DH + n = sqrt (all in log2)")
    print(f"  stored cells:     {rec.expected_log2_TDH:.2f} + {rec.expected_log2_n:.2f} "
          f"= {printed_sum:.2f}  vs stored sqrt {rec.expected_log2_sqrt_p:.2f}")
    print(f"  recomputed cells: {row.log2_TDH:.4f} + {row.log2_n:.4f} "
          f"= {computed_sum:.4f}  vs recomputed sqrt {row.log2_sqrt_p:.4f}")
    print(f"  the stored sqrt cell disagrees with its own row by "
          f"{printed_sum - rec.expected_log2_sqrt_p:+.2f}; the recomputed row "
          f"closes to {abs(computed_sum - row.log2_sqrt_p):.1e}")
    print(f"  verdict for the row: {row.verdict}")

    banner("flag meanings")
    print("  no-d             no divisor stored; the row renders as dashes")
    print("  annotated        the record ships an explanatory note")
    print("  m-large          group-op count within a factor 2^8 of sqrt(p): the")
    print("                   call count is low because group work absorbs the effort")
    print("  policy-mismatch  stored d violates d^3 >= p or d^2 <= p, so the")
    print("                   standard band heuristic would not have chosen it")
    flagged = {f for row in rows for f in row.flags}
    print(f"  flags present in this database: {sorted(flagged)}")
    print()
    print("done")


if __name__ == "__main__":
    main()
