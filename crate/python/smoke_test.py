"""Smoke test for the jlab_py extension.

Build and install first:

    pip install --no-build-isolation ./crates/py
"""

import sys

import jlab_py


def check(name, cond):
    print(f"{'ok  ' if cond else 'FAIL'} {name}")
    return bool(cond)


def main():
    corpus = {name: (f, g) for name, f, g in jlab_py.corpus()}
    results = []

    m = jlab_py.PolyMap(*corpus["c2-sample"])
    results.append(check("c2-sample violates the Non-Zero Condition", not m.check_nzc()["holds"]))
    report = m.classify()
    results.append(check("c2-sample is good", report["good"]["is_good"]))
    results.append(check("c2-sample classifies as C2", report["class"]["class"] == "C2"))
    certs = m.c2_refute()
    results.append(check("c2-sample has a refutation certificate", len(certs) > 0))

    fstar = jlab_py.PolyMap(*corpus["f-star"])
    rep = fstar.classify()
    results.append(check("f-star is C1 but not C2", rep["class"]["class"] == "C1_MINUS_C2"))
    curves = rep["asymptotic"]
    results.append(check("f-star has an asymptotic curve", len(curves) > 0))

    pts = fstar.fiber(0.5 + 0.25j, -1.0 + 0.5j)
    images = [evaluate(fstar, p) for p in pts]
    ok = bool(pts) and all(abs(f - (0.5 + 0.25j)) < 1e-6 and abs(g - (-1.0 + 0.5j)) < 1e-6
                           for f, g in images)
    results.append(check("f-star fiber points map to the target", ok))

    limits = fstar.limit_check(1.0)
    results.append(check("f-star diverging sequence converges to the curve",
                         all(item["limit"]["converged"] for item in limits)))

    dom = fstar.dominancy(samples=10, seed=7)
    results.append(check("f-star dominance run has non-empty fibers", dom["nonempty_fibers"] > 0))

    results.append(check("lemma system is unsolvable at r=2, s=1, N=2",
                         jlab_py.lemma_system_check(2, 1, 2)[0] is False))
    results.append(check("lemma system is solvable at r=1",
                         jlab_py.lemma_system_check(1, 2, 3)[0] is True))

    sweep = jlab_py.sweep(2, 1, 1, ["1", "-1"], max_degree=0)
    results.append(check("linear model sweep finds no NZC map", sweep["tested"] == 16 and sweep["good_nzc_hold"] == 0))

    results.append(check("canonical printing", jlab_py.canonical("y + x*x - 0*y") == "x^2 + y"))

    roots = sorted(jlab_py.roots([-1, 0, 1]), key=lambda z: z.real)
    results.append(check("roots of z^2 - 1", abs(roots[0] + 1) < 1e-12 and abs(roots[1] - 1) < 1e-12))

    return 0 if all(results) else 1


def evaluate(m, point):
    """Evaluate the map at a complex point via its printed polynomials."""
    x, y = point
    env = {"x": complex(x), "y": complex(y)}
    f = eval(m.f.replace("^", "**"), {}, env)
    g = eval(m.g.replace("^", "**"), {}, env)
    return f, g


if __name__ == "__main__":
    sys.exit(main())
