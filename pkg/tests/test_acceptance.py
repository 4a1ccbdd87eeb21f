"""One test per acceptance criterion; each prints a PASS/FAIL line in the summary.

The full verification plan runs once per session and the criteria read
their verdicts off the result list, with direct library calls where a
criterion names a specific identity.
"""

from collections import defaultdict

import pytest

from filiform import degen, report, verify
from filiform.catalog import derive_constants, eq5_residual
from filiform.deriv import IDEAL_H1, IDEAL_H2, ideal_check, verify_diag_derivation
from filiform.lie import jacobi_residuals

DERIVATION_FINDINGS = {("7.1", "mu9_1")}
DEGENERATION_FINDINGS = {("6.3", "mu9_2"), ("6.3", "mu9_5"), ("6.4", "mu9_17"), ("6.5", "mu9_18"),
                         ("6.5", "mu9_19"), ("6.5", "mu9_23"), ("6.5", "mu9_24"), ("7.1", "mu9_1")}


@pytest.fixture(scope="module")
def full(cat):
    results = verify.run(cat, verify.plan(cat), samples=3, seed=0)
    by = defaultdict(list)
    for r in results:
        by[r.check_kind].append(r)
    return results, by


@pytest.fixture
def record(acceptance_log):
    def rec(n, ok, detail):
        acceptance_log.append(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return rec


def case_results(by, kind):
    return [r for r in by[kind] if r.case_id[0] in "67" and "[" not in r.algebra]


def rerun(cat, results):
    tasks = [verify.Task(r.check_kind, r.case_id, r.algebra) for r in results]
    return verify.run(cat, tasks, samples=3, seed=0)


def test_1_jacobi(cat, full, record):
    _, by = full
    direct = [r.name for r in cat.rows if jacobi_residuals(derive_constants(r))]
    ok = len(by["jacobi"]) == 28 and all(r.status == "PASS" for r in by["jacobi"]) and not direct
    record(1, ok, f"Jacobi identity holds symbolically for {len(by['jacobi'])} catalog rows")


def test_2_eq5(cat, full, record):
    _, by = full
    hand = -48 - 48 - 32 + 128
    ok = (len(by["eq5"]) == 28 and all(r.status == "PASS" for r in by["eq5"])
          and all(eq5_residual(r).is_zero() for r in cat.rows)
          and eq5_residual(cat.row("mu9_6")) == hand == 0)
    record(2, ok, "quadratic constraint vanishes on all 28 rows; row mu9_6 gives -48-48-32+128 = 0")


def test_3_semisimple_derivations(cat, full, record):
    _, by = full
    sem = [r for r in by["derivation"] if r.case_id == "semisimple"]
    ok = len(sem) == 10 and all(r.status == "PASS" for r in sem) and all(
        verify_diag_derivation(d.algebra, cat) for d in cat.diag)
    record(3, ok, f"{len(sem)} diagonal derivations verified")


def test_4_ideals(cat, full, record):
    _, by = full
    ok = len(by["ideal"]) == 28 and all(r.status == "PASS" for r in by["ideal"])
    ok = ok and all(not ideal_check(derive_constants(r), h) for r in cat.rows for h in (IDEAL_H1, IDEAL_H2))
    record(4, ok, "h1 and h2 are ideals of every catalog algebra")


def test_5_derivation_templates(cat, full, record):
    _, by = full
    rs = case_results(by, "derivation")
    covered = {(r.case_id, r.algebra) for r in rs}
    expected = {(c["id"], a) for c in cat.cases for a in c["algebras"]}
    findings = [r for r in rs if r.status == "FINDING"]
    again = rerun(cat, findings)
    ok = (covered == expected and not [r for r in rs if r.status == "FAIL"]
          and {(r.case_id, r.algebra) for r in findings} == DERIVATION_FINDINGS
          and [(r.status, r.residuals) for r in again] == [(r.status, r.residuals) for r in findings])
    record(5, ok, f"{len(rs)} case derivations checked; FINDING list "
                  f"{sorted(f'{r.case_id}/{r.algebra}' for r in findings)} complete and reproducible")


def test_6_deformations(full, record):
    _, by = full
    coc, sol = case_results(by, "cocycle"), case_results(by, "solvable")
    ok = len(coc) == len(sol) > 0 and all(r.status == "PASS" for r in coc + sol)
    record(6, ok, f"mu_t Jacobi vanishes degree by degree and is solvable, not nilpotent, "
                  f"at 3 points for {len(coc)} case algebras")


def test_7_proposition(full, record):
    _, by = full
    h2 = [r for r in by["proposition"] if r.case_id.startswith("7.")]
    rnd = [r for r in by["proposition"] if r.case_id == "random"]
    ok = len(h2) == 7 and len(rnd) == 20 and all(r.status == "PASS" for r in h2 + rnd)
    record(7, ok, f"closed form equals recurrence on {len(h2)} cases and {len(rnd)} random D")


def test_8_combinatorics(full, record):
    _, by = full
    rs = [r for r in by["proposition"] if r.case_id == "combinatorics"]
    ok = {r.algebra for r in rs} == {"sequences", "Y-identity"} and all(r.status == "PASS" for r in rs)
    record(8, ok, "|I_k(r,s)| = C(r-s-1, k-2) for all r, s; Y-identity on 50 triples")


def test_9_degeneration(cat, full, record):
    _, by = full
    rs = case_results(by, "degeneration")
    first = [r for r in rs if (r.case_id, r.algebra) == ("6.6a", "mu9_6")]
    findings = [r for r in rs if r.status == "FINDING"]
    structural = [r for r in findings for idx, _ in r.residuals
                  if idx[0] + idx[1] > 9 or idx[2] < idx[0] + idx[1]]
    again = rerun(cat, findings)
    ok = (first and first[0].status == "PASS" and not [r for r in rs if r.status == "FAIL"]
          and not structural
          and {(r.case_id, r.algebra) for r in findings} == DEGENERATION_FINDINGS
          and [(r.status, r.residuals) for r in again] == [(r.status, r.residuals) for r in findings])
    record(9, ok, f"mu9_6 witness exact; {len(findings)} reproducible FINDINGs with structural zeros intact")


def test_10_char_nilpotent(full, record):
    _, by = full
    cn = by["cn"]
    listed = [r for r in cn if r.case_id == "cn-list"]
    table = [r for r in cn if r.case_id == "semisimple"]
    b_ne_0 = [r for r in cn if r.algebra == "mu9_17[b != 0]"]
    ok = (len(listed) == 28 and len(table) == 10 and len(b_ne_0) == 1
          and all(r.status == "PASS" for r in listed + table + b_ne_0))
    record("10a", ok, "28 listed algebras characteristically nilpotent at 3 points, 10 table algebras not; "
                      "Der(h1) of mu9_17 with b != 0 nilpotent")


@pytest.mark.xfail(strict=True, reason="Der(h2) of mu9_1 at a = -1 contains non-nilpotent derivations")
def test_10_alpha_minus_one(full, record):
    _, by = full
    r = [r for r in by["cn"] if r.algebra == "mu9_1[a = -1]"]
    ok = len(r) == 1 and r[0].status == "PASS"
    record("10b", ok, "Der(h1) and Der(h2) of mu9_1 at a = -1 nilpotent: " + (r[0].note if r else "missing"))


def test_11_determinism(cat, record):
    tasks = verify.plan(cat, None, ["6.3", "7.3", "random", "cn-list"], ["mu9_5", "mu9_8", "mu9_13"])
    tasks += verify.plan(cat, ["proposition"], ["random"], None)[:3]
    a = verify.run(cat, tasks, samples=3, seed=5, jobs=1)
    b = verify.run(cat, list(reversed(tasks)), samples=3, seed=5, jobs=2)
    sha = report.catalog_digest(cat.source)
    ja = report.to_json(a, catalog_sha256=sha, seed=5, samples=3)
    jb = report.to_json(b, catalog_sha256=sha, seed=5, samples=3)
    record(11, ja == jb and ja.encode() == jb.encode(), f"two runs of {len(tasks)} checks give byte-identical JSON")
