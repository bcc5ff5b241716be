"""Named verification suites combining built-in datasets with seeded random data."""
from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from .errors import CharacterMismatch, OutsideDomain, UnknownSuite
from .fukcat import HolonomyCharacter, check_functor_order, check_twisted_equations
from .jsonio import (fiber_from_json, gamma_from_json, isotopy_from_json, load_builtin,
                     points_from_json, polytope_from_json)
from .novikov import (NovikovScalar, RingConfig, nv_deviation, nv_exp, nv_inv, nv_mul,
                      nv_val)
from .potential import (apply_tau, check_covariance, check_divisor_axiom, check_equivariance,
                        check_monomial_transform, compute_gamma)
from .randomdata import (perturb_output_degree, random_category, random_fiber_algebra,
                         random_isotopy, random_point, random_scalar)
from .report import ERROR, FAIL, PASS, Case, Report, judged
from .toric import cho_oh_classes
from .wallcross import check_commute, psi_reparam

SUITES = ("twisted-functor", "equivariance", "wallcross", "novikov-laws", "all")
RANDOM_CASES = 100


def _cfg_for(cfg: RingConfig, n: int) -> RingConfig:
    return replace(cfg, n=n)


# -- twisted functor ----------------------------------------------------------

def twisted_functor_suite(cfg: RingConfig, seed: int, n_values=None) -> Report:
    spec = load_builtin("fukcat-random-spec")
    n_values = list(n_values or spec["n_values"])
    rng = random.Random(seed)
    rep = Report("twisted-functor")
    perturbed = False
    for i in range(spec["instances"]):
        n = n_values[i % len(n_values)]
        c = _cfg_for(cfg, n)
        cat = random_category(rng, n, spec["max_arity"], spec["max_components"],
                              spec.get("max_ambient_half_dim", 3))
        rep.extend(check_twisted_equations(cat, c), f"cat{i:03d}:n{n}:")
        rep.extend(check_functor_order(cat, c), f"cat{i:03d}:n{n}:order:")
        if not perturbed:
            try:
                bad, label = perturb_output_degree(cat)
            except ValueError:
                continue
            perturbed = True
            failing = [x.id for x in check_twisted_equations(bad, c).failures]
            ok = failing == [f"class:{label}"]
            rep.cases.append(judged(f"cat{i:03d}:perturbation-detected", 0.0 if ok else 1.0,
                                    c.tol, detail=f"perturbed {label}; failing {failing}"))
    if not perturbed:
        rep.cases.append(Case("perturbation-detected", ERROR, None,
                              detail="no category admitted a degree perturbation"))
    return rep


# -- equivariance -----------------------------------------------------------------

def _builtin_fibers(cfg: RingConfig):
    """``(name, algebra, points, config)`` for every built-in fiber dataset."""
    out = []
    for name in ("cp2-toric", "p1xp1-toric", "t3-synthetic"):
        doc = load_builtin(name)
        c = _cfg_for(cfg, doc["n"])
        alg = cho_oh_classes(polytope_from_json(doc)) if doc["kind"] == "polytope" else fiber_from_json(doc)
        out.append((name, alg, points_from_json(doc), c))
    return out


def equivariance_suite(cfg: RingConfig, seed: int) -> Report:
    rng = random.Random(seed)
    rep = Report("equivariance")
    for name, alg, pts, c in _builtin_fibers(cfg):
        gamma = compute_gamma(alg.classes, c)
        extra = [random_point(rng, alg.rank, c.cutoff) for _ in range(25 if name == "cp2-toric" else 5)]
        for j, pt in enumerate(pts + extra):
            _fiber_cases(rep, alg, pt, gamma, c, f"{name}:pt{j:02d}")
        rep.extend(check_divisor_axiom(alg, "m", c), f"{name}:")
        v = [Fraction(rng.randint(-4, 4), 12) for _ in range(alg.rank)]
        rep.extend(check_monomial_transform(alg, pts[0], v, c), f"{name}:fukaya-trick:")
    for i in range(RANDOM_CASES):
        alg = random_fiber_algebra(rng, cfg)
        gamma = compute_gamma(alg.classes, cfg)
        pt = random_point(rng, alg.rank, cfg.cutoff)
        label = f"random{i:03d}"
        _fiber_cases(rep, alg, pt, gamma, cfg, label)
        rep.extend(check_divisor_axiom(alg, "m", cfg), f"{label}:")
    return rep


def _fiber_cases(rep, alg, pt, gamma, cfg, label):
    rep.extend(check_equivariance(alg, pt, gamma, cfg, label))
    rep.cases.append(judged(f"{label}:P-covariance", check_covariance(alg, pt, gamma, cfg), cfg.tol))
    back = apply_tau(pt, gamma, cfg, times=cfg.n)
    rep.cases.append(judged(f"{label}:tau^n=id", back.deviation(pt, cfg.cutoff), cfg.tol))


# -- wall-crossing -----------------------------------------------------------------

def wallcross_suite(cfg: RingConfig, seed: int, implicit_identity: bool = True) -> Report:
    rng = random.Random(seed)
    rep = Report("wallcross")
    doc = load_builtin("wallcross-basic")
    c = _cfg_for(cfg, doc["n"])
    F, r = isotopy_from_json(doc)
    gamma = gamma_from_json(doc, c.order) or compute_gamma(F.classes, c)
    for j, pt in enumerate(points_from_json(doc)):
        rep.extend(check_commute(F, r, pt, gamma, None, c, implicit_identity, f"wallcross-basic:pt{j}"))
    rep.extend(check_divisor_axiom(F, "F", c), "wallcross-basic:")
    wrong = HolonomyCharacter.from_exponents([1, 0], c.order)  # gamma(boundary) = zeta, maslov 0
    try:
        check_commute(F, r, points_from_json(doc)[0], wrong, None, c, implicit_identity)
        raised = False
    except CharacterMismatch:
        raised = True
    rep.cases.append(judged("wallcross-basic:character-mismatch-raised", 0.0 if raised else 1.0, c.tol))
    for i in range(RANDOM_CASES):
        F, r = random_isotopy(rng, cfg)
        gamma = compute_gamma(F.classes, cfg)
        pt = random_point(rng, F.rank, cfg.cutoff)
        label = f"random{i:03d}"
        try:
            rep.extend(check_commute(F, r, pt, gamma, None, cfg, implicit_identity, label))
            back = psi_reparam(r.inverse(), psi_reparam(r, pt, cfg), cfg)
        except OutsideDomain as exc:
            # the instance cannot be evaluated at this cutoff; say so rather than skip it
            rep.cases.append(Case(f"{label}:outside-domain", ERROR, None, detail=str(exc)))
            continue
        rep.extend(check_divisor_axiom(F, "F", cfg), f"{label}:")
        rep.cases.append(judged(f"{label}:psi-inverse", back.deviation(pt, cfg.cutoff), cfg.tol))
    return rep


# -- Novikov ring laws -------------------------------------------------------------

def novikov_suite(cfg: RingConfig, seed: int, cases: int = RANDOM_CASES) -> Report:
    rng = random.Random(seed)
    rep = Report("novikov-laws")
    cut = cfg.cutoff
    offset = lambda lo, hi: Fraction(rng.randint(lo, hi), 12) * cut  # leading exponents scale with cutoff
    for i in range(cases):
        # ring laws in Lambda_0 / T^cutoff; a factor of negative valuation would
        # lower the precision of a product below the cutoff it carries
        a, b, c = (random_scalar(rng, cut, min_exp=offset(0, 3)) for _ in range(3))
        t = f"{i:03d}"
        rep.cases.append(judged(f"assoc:{t}", nv_deviation(nv_mul(nv_mul(a, b), c), nv_mul(a, nv_mul(b, c)), cut), cfg.tol))
        rep.cases.append(judged(f"distrib:{t}", nv_deviation(nv_mul(a, b + c), nv_mul(a, b) + nv_mul(a, c), cut), cfg.tol))
        rep.cases.append(judged(f"commut:{t}", nv_deviation(nv_mul(a, b), nv_mul(b, a), cut), cfg.tol))
        p, q = (random_scalar(rng, cut, min_exp=offset(-3, 3)) for _ in range(2))
        exact = nv_val(nv_mul(p, q)) == nv_val(p) + nv_val(q)
        rep.cases.append(Case(f"val-mul:{t}", PASS if exact else FAIL, 0.0,
                              str(nv_val(nv_mul(p, q))), str(nv_val(p) + nv_val(q))))
        # inverse coefficients grow like (tail / leading)^(cutoff / step); a tail at
        # most half the leading coefficient keeps float error far below tol
        u = random_scalar(rng, cut, min_exp=offset(-3, 3), tail=(0.05, 0.25))
        one = NovikovScalar.one(cut)
        rep.cases.append(judged(f"inverse:{t}", nv_deviation(nv_mul(u, nv_inv(u, cfg.tol)), one, cut), cfg.tol))
        x = random_scalar(rng, cut, min_exp=0, den=4).scale(0.5)
        y = random_scalar(rng, cut, min_exp=offset(1, 3), den=4).scale(0.5)
        rep.cases.append(judged(f"exp-add:{t}", nv_deviation(nv_exp(x + y), nv_mul(nv_exp(x), nv_exp(y)), cut), cfg.tol))
    return rep


def run_suite(name: str, cfg: RingConfig, seed: int = 0, n_values=None,
              implicit_identity: bool = True) -> Report:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    parts = {
        "twisted-functor": lambda: twisted_functor_suite(cfg, seed, n_values),
        "equivariance": lambda: equivariance_suite(cfg, seed),
        "wallcross": lambda: wallcross_suite(cfg, seed, implicit_identity),
        "novikov-laws": lambda: novikov_suite(cfg, seed),
    }
    if name == "all":
        rep = Report("all")
        for part in ("twisted-functor", "equivariance", "wallcross", "novikov-laws"):
            rep.extend(parts[part](), f"{part}/")
    else:
        rep = parts[name]()
    rep.config = {"suite": name, "seed": seed, "n": cfg.n, "cutoff": str(cfg.cutoff),
                  "tol": cfg.tol, "implicit_identity": implicit_identity,
                  "n_values": list(n_values) if n_values else None}
    return rep
