"""Verification suites behind ``bhurwitz verify``.

Each suite returns a JSON-ready report

    {"schema_version", "suite", "config", "checks": [{"name", "passed", "checked", ...}], "passed"}

with no timings or other run-dependent values, so repeated runs are
byte-identical.  Random probes come from ``random.Random(seed)``.
"""

from __future__ import annotations

import itertools
import logging
import random
from fractions import Fraction
from typing import Callable, Dict, List

from .heisenberg import RepMultiColor, RepOneColor, apply_bridge_sum
from .hurwitz import (GCHECK_FORM, SCHEMA_VERSION, contract_refined, cutjoin_residual, extract_hurwitz,
                      hurwitz_table_classical, parse_weight, positivity_report, refined_residual,
                      residual_levels, tau_jack, tau_jack_numeric, tau_solve_linear)
from .jack import (adjoint_power_apply, boolean_cumulant, cotransition, hall_pairing, jack, jack_state,
                   laplace_beltrami, lb_eigenvalue, ns_apply)
from .partitions import hook_norm, partitions_of
from .ring import ConfigurationError, ParamScalar, PolyDomain, SeriesElem
from .walg import (D_K_VARIANTS, d_k_apply, identify_lambda_with_t, lambda_sub, omega, poly_add,
                   stirling_identity_check, v_zero, w_mode_apply, w_mode_miura_apply)

log = logging.getLogger(__name__)

DEFAULT_CUBIC = "(P1+z)(P2+z)(P3+z)/(1-z)"
DEFAULT_MONOTONE = "1/(1-z)"


def _check(name, passed, checked, **extra):
    out = {"name": name, "passed": bool(passed), "checked": checked}
    out.update(extra)
    return out


def _report(suite, config, checks):
    return {"schema_version": SCHEMA_VERSION, "suite": suite, "config": config, "checks": checks,
            "passed": all(c["passed"] for c in checks if c.get("kind") != "documented-deviation")}


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------


def _rational(rng, size=5):
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def p_probe(rng, domain, degree_max=4, terms=3):
    """Random polynomial in p~ with domain coefficients."""
    out = SeriesElem.zero(domain)
    for _ in range(rng.randint(1, terms)):
        mu = rng.choice(partitions_of(rng.randint(0, degree_max)))
        c = _rational(rng)
        if c:
            out = out + SeriesElem.monomial(domain.const(c), h=rng.randint(0, 2), mono=tuple(mu),
                                            domain=domain)
    return out


def p_probe_symbolic_s(rng, degree_max=5, terms=4):
    """Random polynomial in p~ with coefficients in Q(s)."""
    s = ParamScalar.s()
    out = SeriesElem.zero()
    for _ in range(rng.randint(1, terms)):
        mu = rng.choice(partitions_of(rng.randint(0, degree_max)))
        c = _rational(rng)
        if c:
            out = out + SeriesElem.monomial(ParamScalar(c) * s ** rng.randint(-2, 2), h=rng.randint(0, 2),
                                            mono=tuple(mu))
    return out


def x_probe(rng, r, domain, degree_max=3, terms=3):
    """Random polynomial in x^a_k, colors 1..r."""
    out = SeriesElem.zero(domain)
    for _ in range(rng.randint(1, terms)):
        mu = rng.choice(partitions_of(rng.randint(0, degree_max)))
        mono = tuple(sorted(((rng.randint(1, r), k) for k in mu), reverse=True))
        c = _rational(rng)
        if c:
            out = out + SeriesElem.monomial(domain.const(c), h=rng.randint(0, 2), lam=rng.randint(-1, 1),
                                            mono=mono, domain=domain)
    return out


def symbolic_multi(r, frakb_value=None):
    names = ["P%d" % a for a in range(1, r + 1)] + ["Q%d" % a for a in range(1, r - 1)]
    return RepMultiColor(r, names[:r], names[r:], domain=PolyDomain(names, frakb_value=frakb_value))


def symbolic_one_color(r, frakb_value=None):
    names = ["P%d" % a for a in range(1, r + 1)] + ["Q%d" % a for a in range(1, r - 1)]
    return RepOneColor(PolyDomain(names, frakb_value=frakb_value))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_jack(depth=6, probes=20, i_max=4, seed=0) -> dict:
    """Orthogonality, Laplace-Beltrami eigenvalues, and the adjoint-path lemma."""
    pairs = bad_pairs = 0
    eig = bad_eig = 0
    for n in range(depth + 1):
        parts = partitions_of(n)
        for lam, mu in itertools.product(parts, repeat=2):
            pairs += 1
            if hall_pairing(jack(lam), jack(mu)) != (hook_norm(lam) if lam == mu else 0):
                bad_pairs += 1
        for lam in parts:
            eig += 1
            if laplace_beltrami(jack(lam)) != jack(lam).scale(lb_eigenvalue(lam)):
                bad_eig += 1
    rng = random.Random(seed)
    rep = RepOneColor()
    adj = bad_adj = 0
    for _ in range(probes):
        v = p_probe_symbolic_s(rng)
        for i in range(i_max + 1):
            adj += 1
            if adjoint_power_apply(i, v) != apply_bridge_sum(v, rep, (0, -1), (i + 1, 0), [0] * (i + 1)):
                bad_adj += 1
    checks = [_check("orthogonality", not bad_pairs, pairs, failures=bad_pairs),
              _check("laplace_beltrami_eigenvalues", not bad_eig, eig, failures=bad_eig),
              _check("adjoint_paths", not bad_adj, adj, failures=bad_adj)]
    return _report("jack", {"depth": depth, "probes": probes, "i_max": i_max, "seed": seed}, checks)


def suite_ns(n_max=5, ell_max=4) -> dict:
    """Nazarov-Sklyanin eigenvalues, the Boolean-cumulant moment chain, and co-transition masses."""
    eig = bad_eig = chain = bad_chain = masses = bad_masses = 0
    for n in range(1, n_max + 1):
        for lam in partitions_of(n):
            state = jack_state(lam)
            ct = cotransition(lam)
            total = ParamScalar(0)
            for m in ct.masses:
                total = total + m
            masses += 1
            bad_masses += total != ParamScalar(1)
            for ell in range(ell_max + 1):
                b = boolean_cumulant(lam, ell)
                eig += 1
                bad_eig += ns_apply(ell, state) != state.shift(h=ell + 2).scale(b)
                chain += 1
                bad_chain += b != ct.moment(ell) * n
    checks = [_check("eigen_identity", not bad_eig, eig, failures=bad_eig),
              _check("moment_chain", not bad_chain, chain, failures=bad_chain),
              _check("masses_sum_to_one", not bad_masses, masses, failures=bad_masses)]
    return _report("ns", {"n_max": n_max, "ell_max": ell_max}, checks)


def suite_walg(r_max=4, k_max=3, probes=20, ell_max=4, seed=0) -> dict:
    """Path form against the Miura recursion, the Stirling identity and V + L = Omega."""
    if r_max < 2:
        raise ConfigurationError("r_max must be at least 2")
    modes = bad_modes = 0
    for r in range(2, r_max + 1):
        rep = symbolic_multi(r)
        rng = random.Random(seed + r)
        vs = [x_probe(rng, r, rep.domain) for _ in range(probes)]
        for i in range(1, r + 1):
            for k in range(k_max + 1):
                for v in vs:
                    modes += 1
                    bad_modes += w_mode_miura_apply(i, k, v, rep) != w_mode_apply(i, k, v, rep)
    stirling = [ell for ell in range(1, ell_max + 1) if not stirling_identity_check(ell)]
    sub = bad_sub = 0
    for r in range(2, r_max + 1):
        rep = symbolic_multi(r)
        for i in range(2, r + 1):
            sub += 1
            bad_sub += poly_add(v_zero(i, r, rep), lambda_sub(i, r, rep), rep.domain) != omega(i, r, rep)
    checks = [_check("miura_equals_paths", not bad_modes, modes, failures=bad_modes),
              _check("stirling_identity", not stirling, ell_max, failures=len(stirling)),
              _check("v_plus_l_equals_omega", not bad_sub, sub, failures=bad_sub)]
    return _report("walg", {"r_max": r_max, "k_max": k_max, "probes": probes, "ell_max": ell_max,
                            "seed": seed}, checks)


DK_TAU_CASES = [
    (2, "(1+z)(2+z)", {"P1": 1, "P2": 2}),
    (3, "(1+z)(2+z)(-3+z)/(5-z)", {"P1": 1, "P2": 2, "P3": -3, "Q1": 5}),
]


def suite_dk(r_max=4, k_max=3, probes=20, seed=0) -> dict:
    """The reduced D_k in all their forms, and annihilation of tau.

    The printed "simpler" and "definition" forms differ from the bridge form at
    generic frakb for r >= 3; that comparison is reported with kind
    "documented-deviation" and does not decide the suite.
    """
    corrected = ("simpler_corrected", "definition_corrected")
    agree = bad_agree = zero = bad_zero = printed = printed_diff = 0
    for r in range(2, r_max + 1):
        rep = symbolic_one_color(r)
        rep0 = symbolic_one_color(r, frakb_value=0)
        rng = random.Random(seed + r)
        vs = [p_probe(rng, rep.domain, degree_max=3) for _ in range(probes)]
        rng0 = random.Random(seed + 100 + r)
        vs0 = [p_probe(rng0, rep0.domain, degree_max=3) for _ in range(max(1, probes // 4))]
        for k in range(k_max + 1):
            for v in vs:
                bridge = d_k_apply(k, r, v, rep, "bridge")
                for variant in corrected:
                    agree += 1
                    bad_agree += d_k_apply(k, r, v, rep, variant) != bridge
                for variant in ("simpler", "definition"):
                    printed += 1
                    printed_diff += d_k_apply(k, r, v, rep, variant) != bridge
            for v in vs0:
                outs = [d_k_apply(k, r, v, rep0, variant) for variant in D_K_VARIANTS]
                zero += 1
                bad_zero += any(o != outs[0] for o in outs)
    tau_checks = tau_bad = 0
    for r, text, params in DK_TAU_CASES:
        if r > r_max:
            continue
        tau = tau_jack(parse_weight(text), 4, Fraction(3, 2))
        rep = RepOneColor(tau.domain, tau.trunc, params)
        for k in range(k_max + 1):
            for variant in ("bridge",) + corrected:
                tau_checks += 1
                tau_bad += not identify_lambda_with_t(d_k_apply(k, r, tau, rep, variant)).is_zero()
    checks = [_check("corrected_forms_equal_bridge", not bad_agree, agree, failures=bad_agree),
              _check("all_forms_agree_at_frakb_zero", not bad_zero, zero, failures=bad_zero),
              _check("bridge_annihilates_tau", not tau_bad, tau_checks, failures=tau_bad),
              _check("printed_forms_equal_bridge_generic_frakb", printed_diff == 0, printed,
                     failures=printed_diff, kind="documented-deviation")]
    return _report("dk", {"r_max": r_max, "k_max": k_max, "probes": probes, "seed": seed}, checks)


def suite_cutjoin(weight=DEFAULT_CUBIC, t_max=5, g_max=Fraction(3, 2), k_max=3) -> dict:
    """cut-and-join and refined residuals of the Jack-expansion tau, plus the contraction identity."""
    w = parse_weight(weight)
    tau = tau_jack(w, t_max, g_max)
    cj = residual_levels(cutjoin_residual(w, tau))
    refined = {k: residual_levels(refined_residual(w, tau, k)) for k in range(k_max + 1)}
    bad = tau + SeriesElem.monomial(tau.domain.one(), t=2, mono=(2,), domain=tau.domain, trunc=tau.trunc)
    detected = residual_levels(cutjoin_residual(w, bad))
    contraction = contract_refined(w, bad, t_max).filter(lambda key: key[0] <= t_max) == \
        cutjoin_residual(w, bad).filter(lambda key: key[0] <= t_max)
    checks = [_check("cutjoin_residual_zero", not cj, t_max, nonzero_levels=cj)]
    for k, lv in refined.items():
        checks.append(_check("refined_residual_zero_k%d" % k, not lv, t_max, nonzero_levels=lv))
    checks.append(_check("perturbation_detected", bool(detected), 1, nonzero_levels=detected))
    checks.append(_check("contraction_reproduces_cutjoin", contraction, 1))
    return _report("cutjoin", {"weight": w.to_text(), "t_max": t_max, "g_max": str(Fraction(g_max)),
                               "k_max": k_max}, checks)


LINEAR_CASES = [("(2+z)(3+z)/(5-z)", Fraction(2), Fraction(1, 3)),
                ("1/(1-z)", Fraction(3, 2), Fraction(2, 7))]


def suite_linear(t_max=4, cases=None) -> dict:
    """The order-by-order cut-and-join solver against the fully specialised Jack expansion."""
    checks = []
    for text, s_value, hbar in cases or LINEAR_CASES:
        w = parse_weight(text)
        same = tau_solve_linear(w, s_value, hbar, t_max) == tau_jack_numeric(w, s_value, hbar, t_max)
        checks.append(_check("solver_equals_jack %s s=%s hbar=%s" % (w.to_text(), s_value, hbar), same, t_max))
    return _report("linear", {"t_max": t_max}, checks)


POSITIVITY_WEIGHTS = ["1/(1-z)", "(1+z)"]


def suite_positivity(weights=None, t_max=5, g_max=Fraction(3, 2)) -> dict:
    checks = []
    for text in weights or POSITIVITY_WEIGHTS:
        w = parse_weight(text, form=GCHECK_FORM)
        table = extract_hurwitz(tau_jack(w, t_max, g_max), weight=w)
        rep = positivity_report(table)
        checks.append(_check("positivity %s" % w.to_text(), rep.passed, rep.checked,
                             violations=rep.violations))
    return _report("positivity", {"t_max": t_max, "g_max": str(Fraction(g_max))}, checks)


TR_WEIGHTS = ["1/(1-z)", "(1+z)(2+z)(3+z)/(5-z)"]


def suite_tr(weights=None, t=1, chi_max=3, mu_max=5, bits=256, tol=Fraction(1, 10 ** 30),
             zero_tol=Fraction(1, 10 ** 40)) -> dict:
    """Topological recursion expansions against the frakb = 0 character oracle."""
    from .toprec import build_curve, compare_with_hurwitz, comparison_cases

    checks = []
    g_max = (chi_max + 1) // 2
    n_max = chi_max + 2
    cases = comparison_cases(g_max, chi_max, mu_max, mu_max * n_max)
    for text in weights or TR_WEIGHTS:
        w = parse_weight(text)
        oracle = hurwitz_table_classical(w, mu_max, n_max, g_max)
        curve = build_curve(w, t, bits)
        # the oracle is at t = 1; other t enter as t^{|mu|} inside the comparison
        report = compare_with_hurwitz(curve, oracle.entries, cases, tol, zero_tol, g_max, n_max)
        failures = [e for e in report["entries"] if not e["pass"]]
        checks.append(_check("tr_matches_hurwitz %s" % w.to_text(), not failures, len(cases),
                             failures=failures[:10]))
    return _report("tr", {"t": str(Fraction(t)), "chi_max": chi_max, "mu_max": mu_max, "bits": bits,
                          "tol": str(Fraction(tol)), "zero_tol": str(Fraction(zero_tol))}, checks)


SUITES: Dict[str, Callable[..., dict]] = {
    "jack": suite_jack,
    "ns": suite_ns,
    "walg": suite_walg,
    "dk": suite_dk,
    "cutjoin": suite_cutjoin,
    "refined": suite_cutjoin,
    "linear": suite_linear,
    "positivity": suite_positivity,
    "tr": suite_tr,
}


def run_suite(name: str, **config) -> dict:
    if name not in SUITES:
        raise ConfigurationError("unknown suite %r (known: %s)" % (name, ", ".join(sorted(SUITES))))
    log.info("running suite %s", name)
    return SUITES[name](**config)


def suite_names() -> List[str]:
    return sorted(SUITES)
