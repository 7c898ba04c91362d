"""Search wedge combinations for Nijenhuis elements of a crossed
homomorphism and verify that each one generates a trivial deformation.

For every candidate X (basis wedges and sums of two) the script reports
whether X is Nijenhuis, whether delta0(X, H) is nonzero, and whether the
conjugated series (I + tD(X))^-1 H (I + tL(X)) is linear in t up to the
chosen order.

    python3 scripts/nijenhuis_search.py [--algebra filiform4|k4|r2|sl2] [--action trivial|adjoint]
"""
import argparse
from dataclasses import dataclass
from itertools import combinations

from lieykit.algebra import filiform4, k4_example, nonabelian2, sl2
from lieykit.cohomology import delta0, wedge_pairs
from lieykit.crossed import CrossedMap, is_crossed_hom
from lieykit.deformation import TheoremViolation, is_nijenhuis, trivial_deformation
from lieykit.linalg import qarray, qeye, qzeros
from lieykit.representation import ActionContext, adjoint_rep, trivial_rep

ALGEBRAS = {"filiform4": filiform4, "k4": k4_example, "r2": nonabelian2, "sl2": sl2}


@dataclass
class SearchConfig:
    algebra: str = "filiform4"
    action: str = "trivial"
    order: int = 4


def candidates(P):
    for a in range(P):
        yield [int(k == a) for k in range(P)]
    for a, b in combinations(range(P), 2):
        yield [int(k in (a, b)) for k in range(P)]


def run(cfg: SearchConfig):
    g = ALGEBRAS[cfg.algebra]()
    rep = trivial_rep(g, g.dim) if cfg.action == "trivial" else adjoint_rep(g)
    ctx = ActionContext(g, g, rep)
    M = qeye(g.dim) if cfg.action == "trivial" else qzeros((g.dim, g.dim))
    H = CrossedMap(ctx, M)
    assert not is_crossed_hom(H)
    pairs = wedge_pairs(g.dim)
    label = lambda X: " + ".join(f"e{a + 1}^e{b + 1}" for (a, b), c in zip(pairs, X) if c)
    found = 0
    for X in candidates(len(pairs)):
        X = qarray(X)
        if is_nijenhuis(X, H):
            continue
        nonzero = not delta0(X, H).is_zero()
        try:
            trivial_deformation(X, H, cfg.order)
            linear = "linear"
        except TheoremViolation as exc:
            linear = f"VIOLATION {exc}"
        found += 1
        print(f"{label(X):22s} delta0 {'!= 0' if nonzero else '= 0 '}  {linear}")
    print(f"{found} Nijenhuis candidates on {g.name} ({cfg.action} action, H = {'id' if cfg.action == 'trivial' else '0'})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--algebra", choices=sorted(ALGEBRAS), default=SearchConfig.algebra)
    ap.add_argument("--action", choices=["trivial", "adjoint"], default=SearchConfig.action)
    ap.add_argument("--order", type=int, default=SearchConfig.order)
    args = ap.parse_args()
    run(SearchConfig(args.algebra, args.action, args.order))


if __name__ == "__main__":
    main()
