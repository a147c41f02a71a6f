"""Simulated Diffie-Hellman oracle with exact call accounting.

The oracle answers dh(aP, bP) = abP. It recovers a from aP by its own
baby-step giant-step solver at call time, so it accepts arbitrary points
produced mid-computation (squarings dh(Y, Y) included) without tracking any
exponent bookkeeping that a real black box would not have. That private solver
work is deliberately invisible to the caller: the attached ledger moves by
exactly one oracle call per invocation and nothing else.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .groups import CyclicGroup, GroupPoint, GuardRailError, scalar_mul_cost
from .modmath import isqrt

SIMULATION_GUARD = 2**32  # largest group order the simulated oracle will serve


@dataclass
class CostLedger:
    """Exact counters for one reduction run; monotone, never shared between runs."""

    group_ops: int = 0
    oracle_calls: int = 0
    bsgs_table_entries: int = 0

    def charge_group_ops(self, k: int) -> None:
        if k < 0:
            raise ValueError(f"cannot charge {k} group operations")
        self.group_ops += k

    def charge_table_entries(self, k: int) -> None:
        if k < 0:
            raise ValueError(f"cannot charge {k} table entries")
        self.bsgs_table_entries += k

    def as_dict(self) -> dict:
        return asdict(self)


class OracleHandle:
    """DH oracle bound to one group; reusable across runs via attach_ledger.

    solver_budget caps the private group operations spent answering a single
    call (the guard on the group order keeps legitimate calls far below it).
    """

    def __init__(self, group: CyclicGroup, solver_budget: int = 2**18):
        if group.order > SIMULATION_GUARD:
            raise GuardRailError(
                f"order {group.order} exceeds the oracle simulation guard {SIMULATION_GUARD}"
            )
        self.group = group
        self.solver_budget = solver_budget
        self.call_count = 0
        self.ledger: CostLedger | None = None
        self._baby_table: dict[bytes, int] | None = None
        self._giant_step: GroupPoint | None = None
        self._table_span = isqrt(group.order - 1) + 1 if group.order > 1 else 1

    def attach_ledger(self, ledger: CostLedger | None) -> None:
        """Direct subsequent call charges to this ledger (None detaches)."""
        self.ledger = ledger

    def _ensure_solver(self) -> None:
        # one baby table per handle, shared by every call this handle answers
        if self._baby_table is not None:
            return
        g, m = self.group, self._table_span
        table = {}
        step = g.identity
        for r in range(m):
            table.setdefault(g.encode(step), r)
            step = g.add(step, g.generator)
        self._baby_table = table
        self._giant_step = g.negate(g.scalar_mul(m, g.generator))

    def _private_dlog(self, A: GroupPoint) -> int:
        """Exponent of A, solved with cached baby steps; work stays off the caller's ledger."""
        self._ensure_solver()
        g, m = self.group, self._table_span
        spent = 0
        probe = A
        for i in range(m + 1):
            r = self._baby_table.get(g.encode(probe))
            if r is not None:
                return (i * m + r) % g.order
            probe = g.add(probe, self._giant_step)
            spent += 1
            if spent > self.solver_budget:
                raise GuardRailError(
                    f"oracle solver budget {self.solver_budget} exhausted at order {g.order}"
                )
        raise RuntimeError(
            f"oracle dlog failed on order {g.order}: point not generated by the group generator"
        )

    def dh(self, A: GroupPoint, B: GroupPoint) -> GroupPoint:
        """Return (ab)P for A = aP, B = bP; charges exactly one oracle call."""
        self.group._member(A)
        self.group._member(B)
        a = self._private_dlog(A)
        result = self.group.scalar_mul(a, B)
        self.call_count += 1
        if self.ledger is not None:
            self.ledger.oracle_calls += 1
        return result
