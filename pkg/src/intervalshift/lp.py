"""Linear programs that shift unit intervals into or out of graph properties.

For unit intervals sorted by center there is always a minimum-cost solution
that preserves the center order, so each target property reduces to linear
gap constraints between fixed index pairs:

  edgeless     consecutive shifted centers more than 1 apart
  acyclic      centers two apart more than 1 apart (interval graphs are
               chordal, so killing all triangles kills all cycles)
  no_kclique   centers k-1 apart more than 1 apart
  kconnected   centers `offset` apart at most 1 apart

Strict inequalities are made solvable by a caller-chosen eps > 0.  Objectives
minimize the unweighted sum of absolute shifts; the standard split into
positive and negative parts turns them into plain LPs solved by a dense
two-phase simplex with Bland's anti-cycling rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Collection, ShiftSolution, make_shift_solution

__all__ = [
    "LinearProgram",
    "PropertySpec",
    "PROPERTY_NAMES",
    "abs_value_transform",
    "build_edgeless_lp",
    "build_acyclic_lp",
    "build_no_kclique_lp",
    "build_kconnected_lp",
    "solve_lp",
    "solve_property",
    "to_lp_text",
]

PROPERTY_NAMES = ("edgeless", "acyclic", "no_kclique", "kconnected")

Relation = str  # one of "<=", ">=", "="


@dataclass(frozen=True)
class LinearProgram:
    """A small dense LP: rows are (coefficients, relation, rhs).

    With abs_objective=True the objective coefficients apply to |x_i| rather
    than x_i; abs_value_transform removes that marker.
    """

    num_vars: int
    objective: tuple[float, ...]
    constraints: tuple[tuple[tuple[float, ...], Relation, float], ...]
    nonneg_vars: frozenset[int] = field(default_factory=frozenset)
    abs_objective: bool = False

    def __post_init__(self) -> None:
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length does not match num_vars")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != self.num_vars:
                raise ValueError("constraint row length does not match num_vars")
            if rel not in ("<=", ">=", "="):
                raise ValueError(f"unknown relation {rel!r}")


@dataclass(frozen=True, slots=True)
class PropertySpec:
    """Requested target property with its parameters."""

    property: str
    k: int | None = None
    eps: float = 1e-6

    def __post_init__(self) -> None:
        if self.property not in PROPERTY_NAMES:
            raise ValueError(f"unknown property {self.property!r}")
        if self.property in ("no_kclique", "kconnected") and self.k is None:
            raise ValueError(f"{self.property} needs a clique/connectivity size k")
        if self.property != "kconnected" and not self.eps > 0:
            raise ValueError("eps must be positive for strict-inequality properties")


def _row(n: int, j_neg: int, j_pos: int) -> tuple[float, ...]:
    coeffs = [0.0] * n
    coeffs[j_neg] -= 1.0
    coeffs[j_pos] += 1.0
    return tuple(coeffs)


def _require_sorted_units(collection: Collection) -> np.ndarray:
    if not collection.sorted_by_center:
        raise ValueError("collection must be sorted by center")
    centers, lengths, _, _, _ = collection.arrays()
    if lengths.size and not np.all(lengths == 1.0):
        raise ValueError("linear constraint systems require unit intervals")
    return centers


def build_edgeless_lp(collection: Collection, eps: float = 1e-6) -> LinearProgram:
    """Shift variables so no two shifted intervals intersect."""
    if not len(collection):
        raise ValueError("empty instance")
    if not eps > 0:
        raise ValueError("eps must be positive")
    c = _require_sorted_units(collection)
    n = len(collection)
    rows = tuple(
        (_row(n, i, i + 1), ">=", 1.0 + eps - (c[i + 1] - c[i])) for i in range(n - 1)
    )
    return LinearProgram(n, (1.0,) * n, rows, abs_objective=True)


def build_acyclic_lp(collection: Collection, eps: float = 1e-6) -> LinearProgram:
    """Shift variables so the shifted intersection graph has no cycle.

    Interval graphs are chordal, so forbidding triangles of consecutive
    intervals is enough.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    c = _require_sorted_units(collection)
    n = len(collection)
    rows = tuple(
        (_row(n, i, i + 2), ">=", 1.0 + eps - (c[i + 2] - c[i])) for i in range(n - 2)
    )
    return LinearProgram(n, (1.0,) * n, rows, abs_objective=True)


def build_no_kclique_lp(collection: Collection, k: int, eps: float = 1e-6) -> LinearProgram:
    """Shift variables so the shifted graph contains no k-clique.

    Unit intervals sorted by center have a k-clique exactly when some k
    consecutive centers span at most 1, so each window of k consecutive
    intervals must be stretched past unit span.  k above n yields the empty
    constraint system.
    """
    if k < 2:
        raise ValueError(f"clique size must be at least 2, got {k}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    c = _require_sorted_units(collection)
    n = len(collection)
    rows = tuple(
        (_row(n, i, i + k - 1), ">=", 1.0 + eps - (c[i + k - 1] - c[i]))
        for i in range(max(n - k + 1, 0))
    )
    return LinearProgram(n, (1.0,) * n, rows, abs_objective=True)


def build_kconnected_lp(
    collection: Collection, k: int, offset_mode: str = "validated"
) -> LinearProgram:
    """Shift variables so the shifted graph is k-vertex-connected.

    offset_mode picks the index distance of the constrained pairs:
    "validated" constrains pairs k apart, which matches the brute-force
    connectivity oracle; "literal" constrains pairs k+1 apart, reproducing
    the as-stated constraint system, which is weaker by one position.
    No eps is involved since the inequalities are non-strict.

    Order-preservation rows (shifted centers stay sorted) are included: the
    index-pair encoding reads "every pair `offset` apart in the SHIFTED order
    intersects", so it is only faithful while the order is unchanged.  For
    k >= 2, dropping these rows admits cheap shift vectors that interleave
    the index chains mod k and satisfy every signed row without being
    k-connected.  Some minimum-cost solution always preserves the order, so
    the rows never raise the optimum.
    """
    if k < 1:
        raise ValueError(f"connectivity must be at least 1, got {k}")
    if offset_mode not in ("validated", "literal"):
        raise ValueError(f"unknown offset_mode {offset_mode!r}")
    c = _require_sorted_units(collection)
    n = len(collection)
    if n <= k:
        raise ValueError("k-connectivity needs more than k vertices")
    offset = k if offset_mode == "validated" else k + 1
    rows = tuple(
        (_row(n, i, i + offset), "<=", 1.0 - (c[i + offset] - c[i]))
        for i in range(max(n - offset, 0))
    ) + tuple(
        (_row(n, i, i + 1), ">=", -(c[i + 1] - c[i])) for i in range(n - 1)
    )
    return LinearProgram(n, (1.0,) * n, rows, abs_objective=True)


def abs_value_transform(program: LinearProgram) -> LinearProgram:
    """Split each free variable into nonnegative positive and negative parts.

    Variable i becomes x'_i - x''_i at columns 2i and 2i+1; an objective
    weight w on |x_i| becomes w on both parts.  At any simplex optimum one of
    the two parts is zero, so the objective value is preserved.
    """
    if not program.abs_objective:
        raise ValueError("program does not have an absolute-value objective")
    n = program.num_vars
    objective = []
    for w in program.objective:
        objective.extend((w, w))
    rows = []
    for coeffs, rel, rhs in program.constraints:
        split = []
        for a in coeffs:
            split.extend((a, -a))
        rows.append((tuple(split), rel, rhs))
    return LinearProgram(
        2 * n,
        tuple(objective),
        tuple(rows),
        nonneg_vars=frozenset(range(2 * n)),
        abs_objective=False,
    )


_TOL = 1e-9


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _simplex(T: np.ndarray, basis: list[int], cost: np.ndarray) -> str:
    """Run Bland's-rule simplex to optimality on a feasible tableau."""
    while True:
        cb = cost[basis]
        reduced = cost - cb @ T[:, :-1]
        entering = -1
        for j in range(reduced.size):
            if reduced[j] < -_TOL:
                entering = j
                break
        if entering < 0:
            return "optimal"
        col = T[:, entering]
        best_row = -1
        best_ratio = 0.0
        for i in range(T.shape[0]):
            if col[i] > _TOL:
                ratio = T[i, -1] / col[i]
                if (
                    best_row < 0
                    or ratio < best_ratio - _TOL
                    or (abs(ratio - best_ratio) <= _TOL and basis[i] < basis[best_row])
                ):
                    best_row = i
                    best_ratio = ratio
        if best_row < 0:
            return "unbounded"
        _pivot(T, basis, best_row, entering)


def solve_lp(program: LinearProgram) -> tuple[str, np.ndarray | None, float | None]:
    """Two-phase dense simplex.  Returns (status, solution, objective).

    status is "optimal", "infeasible", or "unbounded".  The program must be in
    the post-transform form: every variable nonnegative, plain objective.
    """
    if program.abs_objective:
        raise ValueError("apply abs_value_transform before solving")
    if program.nonneg_vars != frozenset(range(program.num_vars)):
        raise ValueError("solver expects all variables to be nonnegative")

    n = program.num_vars
    m = len(program.constraints)
    if m == 0:
        if any(w < 0 for w in program.objective):
            return "unbounded", None, None
        return "optimal", np.zeros(n), 0.0

    A = np.array([coeffs for coeffs, _, _ in program.constraints], dtype=float)
    b = np.array([rhs for _, _, rhs in program.constraints], dtype=float)
    rels = [rel for _, rel, _ in program.constraints]
    for i in range(m):
        if b[i] < 0:
            A[i] = -A[i]
            b[i] = -b[i]
            if rels[i] == "<=":
                rels[i] = ">="
            elif rels[i] == ">=":
                rels[i] = "<="

    slack_rows = [i for i, r in enumerate(rels) if r != "="]
    art_rows = [i for i, r in enumerate(rels) if r != "<="]
    n_slack = len(slack_rows)
    n_art = len(art_rows)
    cols = n + n_slack + n_art

    T = np.zeros((m, cols + 1))
    T[:, :n] = A
    T[:, -1] = b
    basis = [-1] * m
    for sj, i in enumerate(slack_rows):
        T[i, n + sj] = 1.0 if rels[i] == "<=" else -1.0
        if rels[i] == "<=":
            basis[i] = n + sj
    for aj, i in enumerate(art_rows):
        T[i, n + n_slack + aj] = 1.0
        basis[i] = n + n_slack + aj

    # phase 1: minimize the artificial variables
    cost1 = np.zeros(cols)
    cost1[n + n_slack :] = 1.0
    status = _simplex(T, basis, cost1)
    if status != "optimal":  # phase 1 is always bounded below by 0
        return "infeasible", None, None
    if float(cost1[basis] @ T[:, -1]) > 1e-7:
        return "infeasible", None, None

    # drive leftover artificials out of the basis, dropping redundant rows
    art_start = n + n_slack
    keep_rows = []
    for i in range(m):
        if basis[i] >= art_start:
            piv = -1
            for j in range(art_start):
                if abs(T[i, j]) > _TOL:
                    piv = j
                    break
            if piv >= 0:
                _pivot(T, basis, i, piv)
                keep_rows.append(i)
            # else: redundant zero row, drop it
        else:
            keep_rows.append(i)
    T = np.hstack([T[keep_rows, :art_start], T[keep_rows, -1:]])
    basis = [basis[i] for i in keep_rows]

    cost2 = np.zeros(art_start)
    cost2[:n] = np.asarray(program.objective)
    status = _simplex(T, basis, cost2)
    if status != "optimal":
        return status, None, None

    x = np.zeros(art_start)
    for i, bj in enumerate(basis):
        x[bj] = T[i, -1]
    solution = x[:n]
    objective = float(np.asarray(program.objective) @ solution)
    return "optimal", solution, objective


def _build_for(
    collection: Collection, spec: PropertySpec, offset_mode: str
) -> LinearProgram:
    if spec.property == "edgeless":
        return build_edgeless_lp(collection, spec.eps)
    if spec.property == "acyclic":
        return build_acyclic_lp(collection, spec.eps)
    if spec.property == "no_kclique":
        assert spec.k is not None
        return build_no_kclique_lp(collection, spec.k, spec.eps)
    assert spec.k is not None
    return build_kconnected_lp(collection, spec.k, offset_mode)


def solve_property(
    collection: Collection, spec: PropertySpec, *, offset_mode: str = "validated"
) -> ShiftSolution:
    """Minimum total-displacement shifts giving the requested property.

    The collection may arrive unsorted; displacements are returned in the
    input order.  Uniform weights are required since the objective weighs all
    shifts equally.
    """
    if len(collection) and collection.uniform_weight() is None:
        raise ValueError("requires unique moving distance function")
    centers, _, _, _, _ = collection.arrays()
    order = np.argsort(centers, kind="stable")
    inner = Collection(collection.items[int(i)] for i in order)
    program = _build_for(inner, spec, offset_mode)
    status, x, _ = solve_lp(abs_value_transform(program))
    if status != "optimal":
        raise RuntimeError(
            f"unexpected LP status {status!r}: generated systems are always solvable"
        )
    assert x is not None
    disp = np.zeros(len(collection))
    for pos in range(len(collection)):
        disp[int(order[pos])] = x[2 * pos] - x[2 * pos + 1]
    return make_shift_solution(collection, disp.tolist())


def to_lp_text(program: LinearProgram, name: str = "shiftlp") -> str:
    """Serialize to CPLEX LP interchange text with 12 significant digits."""
    if program.abs_objective:
        raise ValueError("serialize the transformed program, not the |x| form")

    def num(v: float) -> str:
        return format(v, ".12g")

    def terms(coeffs: tuple[float, ...]) -> str:
        parts = []
        for j, a in enumerate(coeffs):
            if a == 0.0:
                continue
            sign = "-" if a < 0 else ("+" if parts else "")
            mag = abs(a)
            parts.append(f"{sign} {num(mag)} x{j + 1}".strip())
        return " ".join(parts) if parts else "0 x1"

    lines = [f"\\ {name}", "Minimize", f" obj: {terms(program.objective)}", "Subject To"]
    for idx, (coeffs, rel, rhs) in enumerate(program.constraints):
        op = {"<=": "<=", ">=": ">=", "=": "="}[rel]
        lines.append(f" c{idx + 1}: {terms(coeffs)} {op} {num(rhs)}")
    lines.append("Bounds")
    for j in range(program.num_vars):
        if j not in program.nonneg_vars:
            lines.append(f" x{j + 1} free")
    lines.append("End")
    return "\n".join(lines) + "\n"
