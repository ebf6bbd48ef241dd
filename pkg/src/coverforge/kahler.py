"""Relative Kähler differentials of cover algebras over a univariate base.

``Omega_{X/S}`` is presented as a module over the base ``B = k[s]`` (or
``Z[s]``) on the generators ``v_mu dv_lam`` (``lam != 0``), with relations
``v_mu (v_lam dv_lam' + v_lam' dv_lam - s[lam, lam'] dv_{lam+lam'})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from coverforge.cover import BuildingDatum, discriminant_formula
from coverforge.ring.base import QQ, ZZ, IntegerRing, PrimeField, RationalField, Ring
from coverforge.ring.matrix import Matrix
from coverforge.ring.poly import PolynomialRing
from coverforge.ring.snf import elementary_divisors, solve_integer
from coverforge.verdict import Verdict, failed, inconclusive, passed


class UnsupportedBase(ValueError):
    pass


def _check_base(R: Ring) -> PolynomialRing:
    if not (isinstance(R, PolynomialRing) and R.nvars == 1):
        raise UnsupportedBase(f"{R} is not a univariate polynomial ring")
    if not isinstance(R.base, (IntegerRing, RationalField, PrimeField)):
        raise UnsupportedBase(f"coefficients {R.base} are not ZZ, QQ or GF(p)")
    return R


@dataclass
class OmegaPresentation:
    datum: BuildingDatum
    labels: list  # (mu, lam) per column
    rows: list  # relation rows, lists of base elements
    sources: list = field(default_factory=list)  # (mu, lam, lam') per row

    @property
    def ring(self) -> PolynomialRing:
        return self.datum.R

    def matrix(self) -> Matrix:
        return Matrix(self.ring, self.rows, len(self.labels))

    def column(self, mu, lam) -> int:
        return self.labels.index((mu, lam))

    def label(self, j) -> str:
        A = self.datum.A
        mu, lam = self.labels[j]
        v = "" if mu == A.zero else f"v{A.format(mu)} "
        return f"{v}dv{A.format(lam)}"

    def format_row(self, row) -> str:
        terms = [f"({c})*{self.label(j)}" for j, c in enumerate(row) if not c.is_zero()]
        return " + ".join(terms) if terms else "0"


def omega_presentation(d: BuildingDatum) -> OmegaPresentation:
    R = _check_base(d.R)
    A = d.A
    labels = [(mu, lam) for mu in A for lam in A.nonzero()]
    col = {lab: j for j, lab in enumerate(labels)}

    def put(row, coeff, mu, lam):
        # coeff * v_mu * d v_lam, rewritten on the generators
        if lam == A.zero or coeff.is_zero():
            return
        j = col[(mu, lam)]
        row[j] = row[j] + coeff

    rows, sources = [], []
    for mu in A:
        for i, lam in enumerate(A.nonzero()):
            for lam2 in A.nonzero()[i:]:
                row = [R.zero] * len(labels)
                # v_mu v_lam dv_lam2 = s[mu, lam] v_{mu+lam} dv_lam2
                put(row, d.s(mu, lam), A.add(mu, lam), lam2)
                put(row, d.s(mu, lam2), A.add(mu, lam2), lam)
                put(row, -d.s(lam, lam2), mu, A.add(lam, lam2))
                if any(not c.is_zero() for c in row):
                    rows.append(row)
                    sources.append((mu, lam, lam2))
    return OmegaPresentation(d, labels, rows, sources)


def ann_snf(om: OmegaPresentation):
    """Generator of the annihilator of the cokernel, over ``k[s]`` with ``k`` a field.

    Returns ``(generator, divisors)``; the generator is 0 when the module has a
    free summand and otherwise the monic last elementary divisor.
    """
    R = om.ring
    if not R.base.is_field:
        raise UnsupportedBase("ann_snf needs a field of coefficients")
    divs = elementary_divisors(om.matrix()) if om.rows else []
    divs = [R.monic(x) for x in divs]
    if len(divs) < len(om.labels):
        return R.zero, divs
    return (divs[-1] if divs else R.one), divs


def change_base(d: BuildingDatum, coeffs: Ring) -> BuildingDatum:
    """Reduce a datum over ``Z[s]`` (or ``Q[s]``) to ``coeffs[s]``."""
    R = _check_base(d.R)
    S = PolynomialRing(coeffs, R.names)

    def conv(x):
        out = {}
        for e, c in R.to_dict(x).items():
            v = c.v
            if isinstance(coeffs, PrimeField):
                if getattr(v, "denominator", 1) % coeffs.p == 0:
                    raise ValueError(f"{c} has a denominator divisible by {coeffs.p}")
                v = int(v.numerator) * pow(int(getattr(v, "denominator", 1)), -1, coeffs.p)
            out[e] = v
        return S.from_dict(out)

    return BuildingDatum.from_function(d.A, S, lambda a, b: conv(d.s(a, b)))


# -- certificates over Z[s] -----------------------------------------------------------
def _coeffs(R: PolynomialRing, x) -> dict:
    return {e[0]: int(c.v) for e, c in R.to_dict(x).items()}


@dataclass(frozen=True)
class Certificate:
    """``target = sum_r coefficients[r] * relation r``; stored sparsely."""

    target: tuple
    coefficients: dict

    def to_json(self, om: OmegaPresentation) -> dict:
        return {
            "target": om.format_row(list(self.target)),
            "combination": {om.format_row(om.rows[r]): str(c) for r, c in self.coefficients.items()},
        }


def replay(om: OmegaPresentation, cert: Certificate) -> bool:
    R = om.ring
    total = [R.zero] * len(om.labels)
    for r, c in cert.coefficients.items():
        total = [t + c * x for t, x in zip(total, om.rows[r])]
    return all(t == x for t, x in zip(total, cert.target))


def membership_certificate(om: OmegaPresentation, target, degree: int) -> Verdict:
    """Search ``target`` in the ``Z[s]``-span of the relations with multipliers of degree ``<= degree``.

    The bounded linear system is solved exactly over ``Z``, so a certificate is
    returned only if one exists at this bound.
    """
    R = om.ring
    if not isinstance(R.base, IntegerRing):
        raise UnsupportedBase("membership certificates are over Z[s]")
    target = [R(t) if not hasattr(t, "ring") else t for t in target]
    rows = [[_coeffs(R, x) for x in row] for row in om.rows]
    top = max([max(c, default=0) for row in rows for c in row] + [0]) + degree
    top = max(top, max((max(_coeffs(R, t), default=0) for t in target), default=0))
    ncols = len(om.labels)
    unknowns = [(r, k) for r in range(len(rows)) for k in range(degree + 1)]
    eqs, rhs = [], []
    for j in range(ncols):
        tj = _coeffs(R, target[j])
        for e in range(top + 1):
            eqs.append([rows[r][j].get(e - k, 0) for r, k in unknowns])
            rhs.append(tj.get(e, 0))
    sol = solve_integer(eqs, rhs) if unknowns else None
    if sol is None:
        if all(t.is_zero() for t in target):
            return passed("CERTIFIED", bound=degree, witness=Certificate(tuple(target), {}))
        return inconclusive("NOT-FOUND", bound=degree, detail=f"no combination with multipliers of degree <= {degree}")
    coeffs = {}
    s = R.gen(0)
    for (r, k), c in zip(unknowns, sol):
        if c:
            coeffs[r] = coeffs.get(r, R.zero) + c * s**k
    cert = Certificate(tuple(target), coeffs)
    assert replay(om, cert), "certificate failed to replay"
    return passed("CERTIFIED", bound=degree, witness=cert)


def _generator_target(om: OmegaPresentation, j: int, factor):
    R = om.ring
    t = [R.zero] * len(om.labels)
    t[j] = R(factor) if isinstance(factor, (int, str)) else factor
    return t


def annihilator_certificates(om: OmegaPresentation, factor, degree: int) -> Verdict:
    """Certify ``factor * g`` in the relation span for every generator ``g``."""
    certs = {}
    for j in range(len(om.labels)):
        v = membership_certificate(om, _generator_target(om, j, factor), degree)
        if not v.ok:
            return inconclusive("NOT-FOUND", bound=degree, witness=om.label(j), detail=f"({factor})*{om.label(j)}: {v.detail}")
        certs[om.label(j)] = v.witness
    return passed("CERTIFIED", bound=degree, witness=certs, detail=f"({factor}) annihilates all {len(certs)} generators")


def discriminant_in_annihilator(d: BuildingDatum, degree: int | None = None) -> Verdict:
    """``disc * Omega = 0``: by SNF divisibility over a field, by certificates over ``Z[s]``."""
    R = _check_base(d.R)
    disc = discriminant_formula(d)
    om = omega_presentation(d)
    if R.base.is_field:
        gen, divs = ann_snf(om)
        ok = disc.is_zero() if gen.is_zero() else R.divides(gen, disc) is not None
        detail = f"discriminant {disc}, annihilator ({gen})"
        data = dict(discriminant=str(disc), annihilator=str(gen), divisors=[str(x) for x in divs])
        return passed("CONTAINED", detail=detail, **data) if ok else failed("NOT-CONTAINED", witness=str(disc), detail=detail, **data)
    if degree is None:
        degree = R.degree(disc) + 2
    v = annihilator_certificates(om, disc, degree)
    if v.ok:
        return passed("CONTAINED", bound=degree, witness=v.witness, detail=f"discriminant {disc} certified", discriminant=str(disc))
    return v


def _in_ann(gen, x, R) -> bool:
    return x.is_zero() if gen.is_zero() else R.divides(gen, x) is not None


def annihilator_bundle(d: BuildingDatum, claimed: str, weaker: list, primes=(2, 3, 5, 7), degree: int = 2) -> list:
    """Evidence that ``Ann_{Z[s]} Omega`` contains ``claimed`` and no listed weakening.

    ``claimed`` is certified over ``Z[s]``.  Each weakening ``w`` is excluded
    when ``w`` is not in the annihilator over ``Q[s]`` or over some ``F_p[s]``
    (annihilators only grow under base change).
    """
    R = _check_base(d.R)
    out = []
    q = change_base(d, QQ)
    gen_q, _ = ann_snf(omega_presentation(q))
    out.append(passed("ANN-Q", detail=f"annihilator over QQ[s] is ({gen_q})", generator=str(gen_q)))
    out.append(annihilator_certificates(omega_presentation(d), R(claimed), degree))
    for w in weaker:
        wq = q.R(w)
        if not _in_ann(gen_q, wq, q.R):
            out.append(passed("EXCLUDED", witness=w, detail=f"{w} is not in the annihilator over QQ[s] = ({gen_q})"))
            continue
        for p in primes:
            fp = change_base(d, PrimeField(p))
            gen_p, _ = ann_snf(omega_presentation(fp))
            if not _in_ann(gen_p, fp.R(w), fp.R):
                out.append(passed("EXCLUDED", witness=w, detail=f"{w} is not in the annihilator over GF({p})[s] = ({gen_p})"))
                break
        else:
            out.append(inconclusive("NOT-EXCLUDED", witness=w, detail=f"{w} survives over QQ and GF(p) for p in {list(primes)}"))
    return out


def example_bundle_mu3() -> list:
    """The four facts pinning the annihilator of the nodal mu_3-cover over ``Z[s]`` to ``(3 s^2)``."""
    from coverforge.catalog import nodal_mu3

    return annihilator_bundle(nodal_mu3(ZZ), "3*s^2", ["3*s", "s^2"])
