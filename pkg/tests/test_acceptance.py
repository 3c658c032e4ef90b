"""Acceptance gate: criteria 1-9, one pass/fail line each.

Run with pytest, or directly with `python3 tests/test_acceptance.py`.
"""
import os
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
import suites  # noqa: E402
from cached import CORPUS, DEVELOPABLE, dev  # noqa: E402
from cogdeck import development  # noqa: E402
from cogdeck.cog import check_morphism_axioms, is_isomorphism, validate_cog  # noqa: E402
from cogdeck.development import build_development, check_simply_connected, induced_cog, star  # noqa: E402
from cogdeck.fileformat import parse_file  # noqa: E402
from cogdeck.presentation import fundamental_group  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent


def criterion_1():
    got = {}
    for pqr in [(2, 3, 3), (2, 3, 4), (2, 3, 5)]:
        C = parse_file(CORPUS / ("triangle_%d%d%d.cogfile" % pqr)).only("cog")
        order = fundamental_group(C, "V12").order
        ref = oracles.coxeter_order_by_permutation_closure(*pqr)
        got[pqr] = (order, ref)
    ok = [got[k][0] for k in sorted(got)] == [24, 48, 120] and all(a == b for a, b in got.values())
    return ok, "orders " + ", ".join(f"{p}{q}{r}={a} (closure {b})" for (p, q, r), (a, b) in sorted(got.items()))


def criterion_2():
    C = parse_file(CORPUS / "triangle_233.cogfile").only("cog")
    D = build_development(C, "V12")
    rep = check_simply_connected(D)
    X = C.base
    want = oracles.development_census(
        {v: C.G(v).order for v in X.vertices}, {a: (X.i(a), X.t(a)) for a in X.edges}, list(X.compose), D.G.order
    )
    got = {k: rep[k] for k in want}
    ok = got == want == {"vertices": 74, "edges": 216, "composable_pairs": 144, "euler_characteristic": 2} and rep["order"] == 1
    return ok, f"V={got['vertices']} E={got['edges']} E2={got['composable_pairs']} chi={got['euler_characteristic']} pi1(dev)={rep['order']}"


def criterion_3():
    C = parse_file(CORPUS / "triangle_237.cogfile").only("cog")

    def forbidden(*a, **k):
        raise AssertionError("star built a global object")

    saved = development.build_development, development.fundamental_group
    development.build_development = development.fundamental_group = forbidden
    try:
        r = star(C, "V12")
    finally:
        development.build_development, development.fundamental_group = saved
    grouping = sorted(len(reps) for _, reps in r.groups)
    ref = oracles.star_size(C.G("V12").order, [C.G(C.base.i(a)).order for a in C.base.in_edges["V12"]])
    ok = r.size == 8 == ref and grouping == [2, 2, 4]
    return ok, f"{r.size} incoming edges, grouped {'+'.join(map(str, grouping))}"


def criterion_4():
    names = sorted(DEVELOPABLE)
    devs = [dev(n) for n in names]
    sc = suites.twisted_cover()
    devs.append(build_development(sc.cog, sc.base))
    names.append("twisted_cover")
    bad = []
    for name, D in zip(names, devs):
        try:
            bar, iso = induced_cog(D)
            validate_cog(bar.base, bar.local, bar.psi, bar.twist)
            check_morphism_axioms(iso)
            if not is_isomorphism(iso):
                bad.append(name)
        except Exception as exc:  # report, do not abort the gate
            bad.append(f"{name}: {exc}")
    return not bad, f"{len(names) - len(bad)}/{len(names)} complexes" + (f"; failed {bad}" if bad else "")


def criterion_5():
    done, failures, kinds = suites.move_soundness(1200, seed=0)
    ok = done >= 1000 and not failures and len(kinds) == 12
    return ok, f"{done} move instances over {len(kinds)} move kinds, {len(failures)} failures"


def criterion_6():
    bad = []
    cases = suites.main_theorem_cases()
    for case in cases:
        ctx, rep = suites.main_theorem_report(case)
        d = rep.details
        good = (
            rep.deck["verdict"]
            and d["homomorphism"]
            and d["kernel"] == ctx.CU.elements
            and d["surjectivity_mode"] == "bruteforce"
            and rep.deck["bruteforce_classes"] == rep.deck["quotient_order"]
        )
        if not good:
            bad.append(case)
    indices = sorted({int(c.split("i")[-1].split("#")[0]) for c in cases if c.startswith("subgroup233/")})
    ok = not bad and {1, 2, 4, 6, 12, 24} <= set(indices)
    return ok, f"{len(cases) - len(bad)}/{len(cases)} coverings; subgroup indices {indices}" + (f"; failed {bad}" if bad else "")


def criterion_7():
    bad = []
    cases = ["double_cover", "identity/rp2", "lambda/rp2"]
    for case in cases:
        ctx, rep = suites.main_theorem_report(case)
        trivial = all(ctx.X.G(v).order == 1 for v in ctx.X.base.vertices) and all(ctx.Y.G(v).order == 1 for v in ctx.Y.base.vertices)
        if not (trivial and ctx.K.order == 1 and ctx.CU.elements == ctx.U.elements and rep.deck["bruteforce_classes"] == ctx.N.order // ctx.U.order):
            bad.append(case)
    return not bad, f"{len(cases) - len(bad)}/{len(cases)} trivial-cog coverings with K=1 and Deck = N/U"


def criterion_8():
    checked, rebuilt, failures = suites.homotopy_path_suite(120, seed=1)
    ok = checked >= 100 and rebuilt > 0 and not failures
    return ok, f"{checked} paths checked, {rebuilt} families rebuilt from the path identity, {len(failures)} failures"


def _cli_pass(tmp, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    results = []
    for label, argv, code, files in suites.cli_invocations(CORPUS, tmp):
        rpath = tmp / "report.json"
        r = subprocess.run([sys.executable, "-m", "cogdeck", *argv, "--report", str(rpath)], capture_output=True, env=env, cwd=ROOT)
        extra = [(tmp / f).read_bytes() for f in files]
        results.append((label, r.returncode == code, r.stdout, rpath.read_bytes() if rpath.exists() else b"", extra))
    return results


def criterion_9():
    with tempfile.TemporaryDirectory() as d:
        tmp = Path(d)
        a = _cli_pass(tmp, 0)
        b = _cli_pass(tmp, 1)
    wrong_code = [x[0] for x in a if not x[1]]
    differ = [x[0] for x, y in zip(a, b) if x[2:] != y[2:]]
    ok = not wrong_code and not differ
    return ok, f"{len(a)} invocations x 2 processes (different hash seeds), {len(differ)} differing, {len(wrong_code)} wrong exit codes"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def _line(n, ok, detail, secs):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {detail}"


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    t = time.time()
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail, time.time() - t))
    assert ok, detail


if __name__ == "__main__":
    start = time.time()
    results = []
    for n, fn in enumerate(CRITERIA, start=1):
        t = time.time()
        ok, detail = fn()
        results.append(ok)
        print(_line(n, ok, detail, time.time() - t), flush=True)
    print(f"{sum(results)}/{len(results)} criteria pass in {time.time() - start:.1f}s")
    sys.exit(0 if all(results) else 1)
