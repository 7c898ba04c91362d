"""Command line: ``lieykit run <file> <task>`` and ``lieykit examples``.

``<task>`` is either the name of a task in the file or a bare task kind;
``--crossed``, ``--degree`` and ``--order`` override task parameters.  Exit
codes: 0 pass, 1 mathematical violation, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .algebra import center, check_axioms, homomorphism_violations
from .cohomology import (Cochain, ComplexContext, MissingCrossedMapError, UnsupportedDegreeError,
                         cohomology_dim, delta0, induced_rep, is_coboundary, is_cocycle,
                         operator_matrix, wedge_pairs)
from .crossed import (CrossedMap, NotCrossedError, NotInvertibleError, graph_map, is_crossed_hom,
                      is_relative_rb)
from .deformation import (DeformationSeries, InvalidDeformationError, NijenhuisCandidate,
                          NotNijenhuisError, TheoremViolation, are_equivalent_formal, extend,
                          infinitesimal, is_formal_deformation, is_linear_deformation,
                          is_nijenhuis, nijenhuis_operators, obstruction, trivial_deformation)
from .io import (TASK_KINDS, ProblemError, ProblemFile, Task, bundled_text, parse_problem,
                 parse_text)
from .linalg import inverse, q, qeye, qzeros
from .reports import Violation, format_report
from .representation import (ActionContext, InvalidActionError, check_action,
                             check_derived_identities, check_representation, semidirect)

__all__ = ["UsageError", "run_task", "run_all", "main"]

PASS, VIOLATION, USAGE = 0, 1, 2


class UsageError(ProblemError):
    pass


class _Report:
    def __init__(self, title: str):
        self.lines = [title]
        self.code = PASS

    def add(self, text: str = ""):
        self.lines.extend(text.split("\n"))

    def check(self, title: str, violations: list[Violation]):
        self.add(format_report(title, violations))
        if violations:
            self.code = VIOLATION
        return not violations

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


# -- formatting --------------------------------------------------------------

def _vec(v, letter="e") -> str:
    terms = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        coef = "" if c == 1 else "-" if c == -1 else f"{c} "
        terms.append(f"{coef}{letter}{i + 1}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _matrix(M, indent="  ") -> str:
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return f"{indent}(empty {M.shape[0]}x{M.shape[1] if M.ndim > 1 else 0})"
    cells = [[str(x) for x in row] for row in M]
    w = max(len(c) for row in cells for c in row)
    return "\n".join(indent + "[" + " ".join(c.rjust(w) for c in row) + "]" for row in cells)


def _pair(K, m) -> str:
    a, b = wedge_pairs(m)[K]
    return f"e{a + 1}^e{b + 1}"


def _cochain2(c, letter="f") -> list[str]:
    """Nonzero values of a degree-2 cochain (F on wedge pairs, G on pair x g)."""
    out = []
    for K in range(c.F.shape[0]):
        if any(x != 0 for x in c.F[K]):
            out.append(f"  F({_pair(K, c.m)}) = {_vec(c.F[K], letter)}")
        for z in range(c.m):
            if any(x != 0 for x in c.G[K, z]):
                out.append(f"  G({_pair(K, c.m)}, e{z + 1}) = {_vec(c.G[K, z], letter)}")
    return out or ["  0"]


# -- resolution ----------------------------------------------------------------

def _need(params: dict, key: str, kind: str):
    if params.get(key) is None:
        raise UsageError(f"task {kind} needs parameter {key!r}")
    return params[key]


def _context(pf: ProblemFile, action: str) -> ActionContext:
    spec = pf.actions[action]
    return ActionContext(pf.algebras[spec.source], pf.algebras[spec.target], spec.rep)


def _action_of_map(pf: ProblemFile, name: str) -> str:
    spec = pf.maps[name]
    if spec.action is not None:
        return spec.action
    hits = [k for k, a in pf.actions.items() if (a.source, a.target) == (spec.domain, spec.codomain)]
    if len(hits) != 1:
        raise UsageError(f"map {name!r} does not name an action and {len(hits)} actions match "
                         f"{spec.domain} -> {spec.codomain}")
    return hits[0]


def _crossed(pf: ProblemFile, name: str, ctx: ActionContext | None = None) -> CrossedMap:
    if name not in pf.maps:
        raise UsageError(f"unknown map {name!r}")
    return CrossedMap(ctx or _context(pf, _action_of_map(pf, name)), pf.maps[name].matrix)


def _names(value, key) -> list[str]:
    names = value if isinstance(value, list) else [value]
    if not names:
        raise UsageError(f"parameter {key!r} is empty")
    return names


def _series(pf: ProblemFile, value, key="series") -> DeformationSeries:
    names = _names(value, key)
    for n in names:
        if n not in pf.maps:
            raise UsageError(f"unknown map {n!r}")
    action = _action_of_map(pf, names[0])
    spec = pf.actions[action]
    for n in names:
        if (pf.maps[n].domain, pf.maps[n].codomain) != (spec.source, spec.target):
            raise UsageError(f"map {n!r} in {key!r} has the wrong domain or codomain")
    return DeformationSeries(_context(pf, action), tuple(pf.maps[n].matrix for n in names))


def _wedge_param(raw, m: int) -> np.ndarray:
    if not isinstance(raw, list):
        raise UsageError("parameter 'X' must be a list of {i, j, coef} terms")
    X = qzeros(len(wedge_pairs(m)))
    for term in raw:
        try:
            i, j = int(term["i"]), int(term["j"])
            coef = q(term.get("coef", 1))
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"bad wedge term {term!r}") from None
        if not (1 <= i <= m and 1 <= j <= m):
            raise UsageError(f"wedge term {term!r} out of range for dimension {m}")
        X = X + NijenhuisCandidate.wedge(m, i, j, coef).X
    return X


def _xlabel(X, m) -> str:
    terms = [f"{'' if c == 1 else '-' if c == -1 else f'{c} '}{_pair(K, m)}"
             for K, c in enumerate(X) if c != 0]
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _selected(table: dict, key, kind_label) -> list[str]:
    if key is None:
        return list(table)
    return _names(key, kind_label)


# -- task handlers -------------------------------------------------------------

def _validate_algebra(pf, p, r):
    for name in _selected(pf.algebras, p.get("algebra"), "algebra"):
        alg = pf.algebras[name]
        if r.check(f"algebra {name} (dim {alg.dim}) axioms", check_axioms(alg)):
            z = center(alg)
            r.add(f"  center: dim {z.dim}" + (" spanned by " + ", ".join(_vec(v) for v in z.basis)
                                               if z.dim else ""))


def _validate_rep(pf, p, r):
    for name in _selected(pf.actions, p.get("action"), "action"):
        spec = pf.actions[name]
        g = pf.algebras[spec.source]
        if r.check(f"representation {name} of {spec.source}", check_representation(g, spec.rep)):
            bad = check_derived_identities(g, spec.rep)
            if bad:
                raise TheoremViolation(f"derived identity fails on a representation: {bad[0]}")


def _validate_action(pf, p, r):
    for name in _selected(pf.actions, p.get("action"), "action"):
        spec = pf.actions[name]
        r.check(f"action {name}: {spec.source} on {spec.target}",
                check_action(pf.algebras[spec.source], pf.algebras[spec.target], spec.rep))


def _check_crossed(pf, p, r):
    for name in _names(_need(p, "crossed", "check-crossed"), "crossed"):
        r.check(f"crossed homomorphism {name}", is_crossed_hom(_crossed(pf, name)))


def _graph_check(pf, p, r):
    name = _need(p, "crossed", "graph-check")
    H = _crossed(pf, name)
    crossed = not is_crossed_hom(H)
    bad = homomorphism_violations(graph_map(H), H.ctx.g, H.ctx.semidirect)
    r.add(f"crossed homomorphism {name}: {'yes' if crossed else 'no'}")
    r.check(f"graph of {name} as a homomorphism into the semidirect product", bad)
    if crossed != (not bad):
        raise TheoremViolation("crossed-homomorphism and graph-homomorphism tests disagree")


def _rb_check(pf, p, r):
    weight = q(p.get("weight", 1))
    if p.get("operator") is not None:
        name = p["operator"]
        spec = pf.maps[name]
        action = p.get("action")
        if action is None:
            hits = [k for k, a in pf.actions.items() if (a.target, a.source) == (spec.domain, spec.codomain)]
            if len(hits) != 1:
                raise UsageError(f"operator {name!r} needs an 'action' parameter")
            action = hits[0]
        ctx = _context(pf, action)
        T = spec.matrix
        title = f"operator {name}"
    else:
        name = _need(p, "crossed", "rb-check")
        H = _crossed(pf, name)
        ctx = H.ctx
        if ctx.m != ctx.n:
            raise NotInvertibleError(f"{name} is not square")
        try:
            T = inverse(H.matrix)
        except ZeroDivisionError:
            raise NotInvertibleError(f"{name} is singular") from None
        r.add(f"inverse of {name}:")
        r.add(_matrix(T))
        title = f"inverse of {name}"
    r.check(f"{title} as a relative Rota-Baxter operator of weight {weight}",
            is_relative_rb(T, weight, ctx.g, ctx.h, ctx.rep))


def _semidirect(pf, p, r):
    name = _need(p, "action", "semidirect")
    spec = pf.actions[name]
    g, h = pf.algebras[spec.source], pf.algebras[spec.target]
    alg = semidirect(g, h, spec.rep)
    m = g.dim
    r.add(f"semidirect product {spec.source} x| {spec.target}, dim {alg.dim} "
          f"(e1..e{m} from {spec.source}, e{m + 1}..e{alg.dim} from {spec.target})")
    N = alg.dim
    for i in range(N):
        for j in range(i + 1, N):
            if any(alg.binary[i, j]):
                r.add(f"  [e{i + 1},e{j + 1}] = {_vec(alg.binary[i, j])}")
    for i in range(N):
        for j in range(i + 1, N):
            for k in range(N):
                if any(alg.ternary[i, j, k]):
                    r.add(f"  <<e{i + 1},e{j + 1},e{k + 1}>> = {_vec(alg.ternary[i, j, k])}")
    r.check("semidirect product axioms", check_axioms(alg))


def _induced_rep(pf, p, r):
    name = _need(p, "crossed", "induced-rep")
    H = _crossed(pf, name).require_crossed()
    rep = induced_rep(H)
    m = H.ctx.m
    for i in range(m):
        r.add(f"rho_H(e{i + 1}):")
        r.add(_matrix(rep.rho[i]))
    for i in range(m):
        for j in range(m):
            if any(rep.mu[i, j].reshape(-1)):
                r.add(f"mu_H(e{i + 1},e{j + 1}):")
                r.add(_matrix(rep.mu[i, j]))
    r.add("(mu_H entries not listed are zero)")
    r.check(f"induced representation of {name}", check_representation(H.ctx.g, rep))


def _complex(pf, p, kind) -> tuple[ComplexContext, str]:
    if p.get("crossed") is not None:
        H = _crossed(pf, p["crossed"]).require_crossed()
        return ComplexContext.for_crossed(H), f"crossed complex of {p['crossed']}"
    name = _need(p, "action", kind)
    spec = pf.actions[name]
    return ComplexContext(pf.algebras[spec.source], spec.rep), f"complex of {name}"


def _degrees(p, ctx, top) -> list[int]:
    if p.get("degree") is not None:
        return [int(p["degree"])]
    lo = 0 if ctx.crossed is not None else 1
    return list(range(lo, top + 1))


def _cohomology(pf, p, r):
    ctx, label = _complex(pf, p, "cohomology")
    r.add(f"{label}: m = {ctx.m}, n = {ctx.n}")
    for d in _degrees(p, ctx, 2):
        r.add(f"  dim H^{d} = {cohomology_dim(ctx, d)}")


def _dsquared(pf, p, r):
    ctx, label = _complex(pf, p, "dsquared-check")
    r.add(f"{label}: m = {ctx.m}, n = {ctx.n}")
    for d in _degrees(p, ctx, 2):
        prod = operator_matrix(ctx, d + 1).matmul(operator_matrix(ctx, d))
        nnz = sum(len(row) for row in prod.to_sdm().values())
        if nnz:
            r.code = VIOLATION
        r.add(f"  delta^{d + 1} delta^{d}: {'zero' if not nnz else f'{nnz} nonzero entries'}")


def _nijenhuis(pf, p, r):
    name = _need(p, "crossed", "nijenhuis-check")
    H = _crossed(pf, name)
    X = _wedge_param(_need(p, "X", "nijenhuis-check"), H.ctx.m)
    if r.check(f"Nijenhuis conditions for X = {_xlabel(X, H.ctx.m)} over {name}", is_nijenhuis(X, H)):
        L, Dx = nijenhuis_operators(X, H.ctx)
        r.add("L(X):")
        r.add(_matrix(L))
        r.add("D(X):")
        r.add(_matrix(Dx))
        r.add("trivial deformation H + t delta(X):")
        r.add(_matrix(delta0(X, H).G.T))


def _linear(pf, p, r):
    name = _need(p, "crossed", "linear-deform-check")
    H = _crossed(pf, name)
    if p.get("perturbation") is not None:
        K = pf.maps[p["perturbation"]].matrix
        label = p["perturbation"]
    else:
        X = _wedge_param(_need(p, "X", "linear-deform-check"), H.ctx.m)
        K = delta0(X, H.require_crossed()).G.T
        label = f"delta({_xlabel(X, H.ctx.m)})"
    r.check(f"{name} + t {label} crossed for all t", is_linear_deformation(H, K))


def _formal(pf, p, r):
    s = _series(pf, _need(p, "series", "formal-deform-check"))
    if r.check(f"order-{s.order} deformation", is_formal_deformation(s)) and s.order >= 1:
        ok = is_cocycle(s.complex, infinitesimal(s))
        r.add(f"  infinitesimal is a 1-cocycle: {'yes' if ok else 'no'}")
        if not ok:
            raise TheoremViolation("infinitesimal of a deformation is not a cocycle")


def _equivalence(pf, p, r):
    order = p.get("order")
    if p.get("series1") is not None:
        s1 = _series(pf, p["series1"], "series1")
        s2 = _series(pf, _need(p, "series2", "equivalence-check"), "series2")
        phi = [pf.maps[n].matrix for n in _names(_need(p, "phi", "equivalence-check"), "phi")]
        vphi = [pf.maps[n].matrix for n in _names(_need(p, "vphi", "equivalence-check"), "vphi")]
        X = _wedge_param(p["X"], s1.ctx.m) if p.get("X") is not None else None
        title = "equivalence of series1 and series2"
    else:
        name = _need(p, "crossed", "equivalence-check")
        H = _crossed(pf, name)
        X = _wedge_param(_need(p, "X", "equivalence-check"), H.ctx.m)
        order = 3 if order is None else order
        s1 = trivial_deformation(X, H, N=int(order))
        s2 = DeformationSeries(H.ctx, (H.matrix,))
        L, Dx = nijenhuis_operators(X, H.ctx)
        phi, vphi = [qeye(H.ctx.m), L], [qeye(H.ctx.n), Dx]
        title = f"trivial deformation by {_xlabel(X, H.ctx.m)} equivalent to {name}"
    bad = are_equivalent_formal(s1, s2, phi, vphi, X=X,
                                order=None if order is None else int(order))
    if r.check(title, bad) and not is_formal_deformation(s1) and not is_formal_deformation(s2):
        diff = _linear_term(s1) - _linear_term(s2)
        ok = is_coboundary(s1.complex, diff)
        r.add(f"  infinitesimals cohomologous: {'yes' if ok else 'no'}")
        if not ok:
            raise TheoremViolation("equivalent deformations with non-cohomologous infinitesimals")


def _linear_term(s: DeformationSeries) -> Cochain:
    return Cochain.from_parts(1, s.ctx.m, s.ctx.n, G=s.term(1).T)


def _obstruction(pf, p, r):
    s = _series(pf, _need(p, "series", "obstruction"))
    full = bool(p.get("include_base_terms", True))
    ob = obstruction(s, include_base_terms=full)
    r.add(f"obstruction of the order-{s.order} deformation"
          + ("" if full else " (positive-index terms only)") + ":")
    r.add("\n".join(_cochain2(ob)))
    cx = s.complex
    r.add(f"  cocycle: {'yes' if is_cocycle(cx, ob) else 'no'}")
    trivial = is_coboundary(cx, ob)
    r.add(f"  class: {'trivial' if trivial else 'nontrivial'}")
    if not trivial:
        r.code = VIOLATION


def _extend(pf, p, r):
    s = _series(pf, _need(p, "series", "extend"))
    nxt = extend(s)
    if nxt is None:
        r.add(f"order-{s.order} deformation does not extend: obstruction class is nontrivial")
        r.code = VIOLATION
        return
    r.add(f"H_{s.order + 1}:")
    r.add(_matrix(nxt))


_HANDLERS = {
    "validate-algebra": _validate_algebra,
    "validate-rep": _validate_rep,
    "validate-action": _validate_action,
    "check-crossed": _check_crossed,
    "graph-check": _graph_check,
    "rb-check": _rb_check,
    "semidirect": _semidirect,
    "induced-rep": _induced_rep,
    "cohomology": _cohomology,
    "dsquared-check": _dsquared,
    "nijenhuis-check": _nijenhuis,
    "linear-deform-check": _linear,
    "formal-deform-check": _formal,
    "equivalence-check": _equivalence,
    "obstruction": _obstruction,
    "extend": _extend,
}
assert set(_HANDLERS) == set(TASK_KINDS)


def run_task(pf: ProblemFile, name: str, overrides: dict | None = None) -> tuple[str, int]:
    """Run a named task (or a bare task kind) and return (report, exit code)."""
    if name in pf.tasks:
        task = pf.tasks[name]
    elif name in TASK_KINDS:
        task = Task(name, {})
    else:
        return f"error: unknown task {name!r}\n", USAGE
    params = dict(task.params)
    params.pop("expect", None)
    for key, val in (overrides or {}).items():
        if val is not None:
            params[key] = val
    r = _Report(f"== {name} ({task.kind}) ==" if name != task.kind else f"== {name} ==")
    try:
        _HANDLERS[task.kind](pf, params, r)
    except (NotCrossedError, InvalidActionError, InvalidDeformationError, NotNijenhuisError) as exc:
        r.add(format_report(str(exc).split(":")[0], exc.violations))
        r.code = VIOLATION
    except NotInvertibleError as exc:
        r.add(f"not invertible: {exc}")
        r.code = VIOLATION
    except TheoremViolation as exc:
        r.add(f"THEOREM VIOLATION: {exc}")
        r.code = VIOLATION
    except (ProblemError, UnsupportedDegreeError, MissingCrossedMapError, ValueError, KeyError) as exc:
        return f"{r.lines[0]}\nerror: {exc}\n", USAGE
    return r.text(), r.code


def run_all(pf: ProblemFile) -> tuple[str, int]:
    """Run every task; a task may carry ``"expect": code``.  Exit 0 when all
    tasks meet their expectation (default 0)."""
    out, code = [], PASS
    for name, task in pf.tasks.items():
        text, got = run_task(pf, name)
        want = int(task.params.get("expect", 0))
        status = "ok" if got == want else "UNEXPECTED"
        out.append(text + f"-- exit {got} (expected {want}): {status}\n")
        if got != want:
            code = VIOLATION
    return "\n".join(out), code


def _emit(text: str, out: str | None):
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lieykit", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a task from a problem file")
    run.add_argument("file")
    run.add_argument("task", help="task name in the file or a task kind: " + ", ".join(TASK_KINDS))
    run.add_argument("--degree", type=int)
    run.add_argument("--crossed")
    run.add_argument("--order", type=int)
    run.add_argument("--out")
    ex = sub.add_parser("examples", help="print the bundled K4 problem file")
    ex.add_argument("--run", action="store_true", help="run every bundled task instead")
    ex.add_argument("--out")
    return ap


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else PASS
    try:
        if args.command == "examples":
            text = bundled_text()
            if not args.run:
                _emit(text, args.out)
                return PASS
            report, code = run_all(parse_text(text))
            _emit(report, args.out)
            return code
        pf = parse_problem(args.file)
    except ProblemError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE
    overrides = {"crossed": args.crossed, "degree": args.degree, "order": args.order}
    text, code = run_task(pf, args.task, overrides)
    if code == USAGE:
        sys.stderr.write(text)
        return code
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
