"""Recursive vanishing certificates and exact h^0 for structured divisors.

Every certificate node records which rule justified it, the claim (the
degree above which cohomology vanishes, or that all of it vanishes), a
well-founded measure that strictly decreases along edges, and children
for each ingredient of the rule: the linearly equivalent target of a
coordinate-ratio ladder, the Kunneth factor pairs of the graded pieces,
or the exact-sequence steps of a stable-set peeling.

The engine never extrapolates.  Each rule re-checks its hypotheses and
those of every child it spawns; if a child falls outside every proved
hypothesis region the engine raises NoApplicableRuleError naming the
failed hypothesis instead of guessing.  h^0 values are filled in only
when every branch bottoms out in a rule that pins h^0 (the projective
line, a constant pullback, or an everything-vanishes instance), so a
node either carries an exact dimension or none at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from math import comb

from .components import (
    act,
    all_components,
    coordinate_subspace,
    free_entries_u_tau,
    index_of,
    proper_nonempty_subsets,
)
from .divisors import DivisorSpec, restrict_structured
from .fields import gf, mat_inv, nullspace
from .subspaces import Subspace

RULES = (
    "base-point",
    "base-P1",
    "base-pullback",
    "nullsta-a",
    "nullsta-b",
    "gallgvan",
    "wellvan",
    "kritvan-a",
    "kritvan-b",
)

_RANK = {
    "base-point": 0,
    "base-P1": 0,
    "base-pullback": 0,
    "nullsta-b": 1,
    "nullsta-a": 2,
    "gallgvan": 3,
    "wellvan": 4,
    "kritvan-a": 5,
    "kritvan-b": 6,
}


class NoApplicableRuleError(ValueError):
    """No implemented theorem covers the requested parameters."""

    def __init__(self, failed_hypothesis, spec=None):
        self.failed_hypothesis = failed_hypothesis
        self.spec = spec
        super().__init__(
            "no applicable rule: %s%s"
            % (failed_hypothesis, " for %r" % (spec,) if spec is not None else "")
        )


@dataclass
class Certificate:
    rule: str
    claim: dict
    measure: tuple
    children: list = dataclass_field(default_factory=list)
    h0: int = None
    detail: dict = dataclass_field(default_factory=dict)

    @property
    def vanishing_above(self):
        return self.claim.get("vanishing_above")

    @property
    def all_t(self):
        return bool(self.claim.get("all_t"))

    def to_json(self):
        out = {
            "rule": self.rule,
            "claim": self.claim,
            "measure": list(self.measure),
        }
        if self.h0 is not None:
            out["h0"] = self.h0
        if self.detail:
            out["detail"] = {k: v for k, v in sorted(self.detail.items())}
        out["children"] = [c.to_json() for c in self.children]
        return out


def vanishing_bound(abar):
    """Least e with every entry beyond position e nonpositive."""
    e = 0
    for i in range(len(abar), 0, -1):
        if abar[i - 1] > 0:
            e = i
            break
    return e


def s_measure(n, m):
    return sum(mi + ni - n[0] for mi, ni in zip(m, n))

def r_measure(n, m):
    d = len(n)
    return d * d + sum(mi + ni for mi, ni in zip(m, n))


def check_ladder_hypotheses(n, m, d):
    """The stepwise hypotheses of the general vanishing theorem."""
    if len(n) != d or len(m) != d:
        return "length of n, m must equal d"
    if d == 0:
        return None
    if n[0] < -d:
        return "n_1 >= -d fails"
    if any(n[i] > n[i + 1] for i in range(d - 1)):
        return "n must be nondecreasing"
    if any(n[i + 1] - n[i] > 1 for i in range(d - 1)):
        return "n steps must be at most 1"
    if m[0] < 0:
        return "m_1 >= 0 fails"
    if any(m[i] > m[i + 1] for i in range(d - 1)):
        return "m must be nondecreasing"
    if any(m[i + 1] - m[i] > 1 for i in range(d - 1)):
        return "m steps must be at most 1"
    return None


def check_flat_hypotheses(n, m, d):
    """The relative-gap hypotheses of the abar = 0 proposition."""
    if len(n) != d or len(m) != d:
        return "length of n, m must equal d"
    if d == 0:
        return None
    if n[0] < -d:
        return "n_1 >= -d fails"
    if any(n[i] > n[i + 1] for i in range(d - 1)):
        return "n must be nondecreasing"
    if any(n[i] - n[0] > i for i in range(d)):
        return "n_i - n_1 <= i - 1 fails"
    if m[0] < 0:
        return "m_1 >= 0 fails"
    if any(m[i] > m[i + 1] for i in range(d - 1)):
        return "m must be nondecreasing"
    if any(m[i] - m[0] > i for i in range(d)):
        return "m_i - m_1 <= i - 1 fails"
    return None


def _p1_degree(spec, q):
    return spec.n[0] + spec.abar[0] + q * (spec.m[0] - spec.abar[0])


class EngineSession:
    """Memoizing certificate factory for a fixed field size q."""

    def __init__(self, q):
        self.q = q
        self._spec_memo = {}
        self._wellvan_memo = {}

    # --- the structured-family certifier ---

    def certify_spec(self, spec):
        key = (spec.abar, spec.n, spec.m)
        if key not in self._spec_memo:
            self._spec_memo[key] = self._certify_spec(spec)
        return self._spec_memo[key]

    def _certify_spec(self, spec):
        d, q = spec.d, self.q
        if d == 0:
            return Certificate(
                rule="base-point",
                claim={"spec": spec.to_json(), "d": 0, "vanishing_above": 0},
                measure=(0, 0),
                h0=1,
            )
        if d == 1:
            deg = _p1_degree(spec, q)
            claim = {"spec": spec.to_json(), "d": 1}
            if deg <= -1:
                claim["all_t"] = True
                claim["vanishing_above"] = 0
            else:
                claim["vanishing_above"] = 0
            return Certificate(
                rule="base-P1",
                claim=claim,
                measure=(1, 0),
                h0=max(0, deg + 1),
                detail={"degree": deg},
            )
        if all(a == 0 for a in spec.abar) and all(x == spec.n[0] for x in spec.n) and all(
            x == 0 for x in spec.m
        ):
            k = spec.n[0]
            if k < -d:
                raise NoApplicableRuleError("pullback degree below -d", spec)
            claim = {"spec": spec.to_json(), "d": d, "vanishing_above": 0}
            if -d <= k <= -1:
                claim["all_t"] = True
            return Certificate(
                rule="base-pullback",
                claim=claim,
                measure=(d, 0),
                h0=comb(k + d, d) if k >= 0 else 0,
                detail={"pullback_degree": k},
            )
        if all(a == 0 for a in spec.abar):
            return self._certify_flat(spec)
        return self._certify_ladder(spec)

    def _certify_flat(self, spec):
        """abar = 0: induction on the gap measures, decrementing n or m."""
        d, q = spec.d, self.q
        n, m = spec.n, spec.m
        bad = check_flat_hypotheses(n, m, d)
        if bad is not None:
            raise NoApplicableRuleError(bad, spec)
        b_style = n[d - 1] <= -1 and m[0] == 0
        rule = "nullsta-b" if b_style else "nullsta-a"
        inner = s_measure(n, m) if b_style else r_measure(n, m)

        # choose the decrement: case (i) lowers some m, case (ii) some n;
        # ties resolve to case (i), and i0 is minimal within the case
        def valid(vec, lower):
            return check_flat_hypotheses(
                vec if not lower else spec.n, vec if lower else spec.m, d
            )

        case = None
        for want_m in (True, False):
            vec = m if want_m else n
            for i0 in range(1, d + 1):
                cand = tuple(
                    v - 1 if i == i0 - 1 else v for i, v in enumerate(vec)
                )
                ok = (
                    check_flat_hypotheses(n, cand, d) is None
                    if want_m
                    else check_flat_hypotheses(cand, m, d) is None
                )
                if ok:
                    case = ("m" if want_m else "n", i0, cand)
                    break
            if case:
                break
        if case is None:
            raise NoApplicableRuleError(
                "no admissible decrement although the base case does not apply", spec
            )
        which, i0, cand = case
        main_spec = (
            DivisorSpec(spec.abar, n, cand)
            if which == "m"
            else DivisorSpec(spec.abar, cand, m)
        )
        main = self.certify_spec(main_spec)
        zero_in = which == "n"  # n-decrements live on orbits through 0
        count = self._orbit_count(i0, zero_in, d)
        spec_a, spec_b = restrict_structured(spec, self._class_tau(i0, zero_in, d), d)
        child_a = self.certify_spec(spec_a)
        child_b = self.certify_spec(spec_b)
        if b_style:
            if not child_a.all_t:
                raise NoApplicableRuleError(
                    "graded factor lost the everything-vanishes property", spec
                )
        else:
            if (child_a.vanishing_above or 0) + (child_b.vanishing_above or 0) > 0:
                raise NoApplicableRuleError(
                    "graded Kunneth factors do not vanish above 0", spec
                )
        claim = {"spec": spec.to_json(), "d": d, "vanishing_above": 0}
        if b_style:
            claim["all_t"] = True
        h0 = None
        if b_style:
            h0 = 0
        elif main.h0 is not None and child_a.h0 is not None and child_b.h0 is not None:
            h0 = main.h0 + count * child_a.h0 * child_b.h0
        return Certificate(
            rule=rule,
            claim=claim,
            measure=(d, _RANK[rule], inner),
            children=[main, child_a, child_b],
            h0=h0,
            detail={
                "decremented": which,
                "i0": i0,
                "orbit_count": count,
                "factor_specs": [spec_a.to_json(), spec_b.to_json()],
            },
        )

    def _certify_ladder(self, spec):
        """abar != 0: coordinate-ratio ladder towards smaller |abar|."""
        d, q = spec.d, self.q
        bad = check_ladder_hypotheses(spec.n, spec.m, d)
        if bad is not None:
            raise NoApplicableRuleError(bad, spec)
        e = vanishing_bound(spec.abar)
        negs = [j for j in range(1, d + 1) if spec.abar[j - 1] < 0]
        if negs:
            j = negs[0]
            bumped = tuple(
                a + 1 if i == j - 1 else a for i, a in enumerate(spec.abar)
            )
            strict = False  # second step: pieces must vanish above e
        else:
            j = next(jj for jj in range(1, e + 1) if spec.abar[jj - 1] >= 1)
            bumped = tuple(
                a - 1 if i == j - 1 else a for i, a in enumerate(spec.abar)
            )
            strict = True  # first step: pieces must vanish above e - 1
        main = self.certify_spec(DivisorSpec(bumped, spec.n, spec.m))
        if (main.vanishing_above or 0) > e:
            raise NoApplicableRuleError(
                "ladder endpoint does not vanish above e", spec
            )
        children = [main]
        piece_info = []
        h0_total = main.h0
        for k in range(1, d + 1):
            for zero_in in (False, True):
                count = self._ladder_count(j, k, zero_in, d)
                if count == 0:
                    continue
                tau = self._class_tau_with_j(j, k, zero_in, d)
                spec_a, spec_b = restrict_structured(spec, tau, d, j=j)
                child_a = self.certify_spec(spec_a)
                child_b = self.certify_spec(spec_b)
                ea = child_a.vanishing_above or 0
                eb = child_b.vanishing_above or 0
                limit = e - 1 if strict else e
                if not (child_a.all_t or child_b.all_t) and ea + eb > limit:
                    raise NoApplicableRuleError(
                        "graded piece vanishes only above %d > %d" % (ea + eb, limit),
                        spec,
                    )
                children.extend([child_a, child_b])
                piece_info.append(
                    {
                        "size": k,
                        "through_zero": zero_in,
                        "count": count,
                        "factor_specs": [spec_a.to_json(), spec_b.to_json()],
                    }
                )
                if h0_total is not None:
                    if (
                        e == 0
                        and child_a.h0 is not None
                        and child_b.h0 is not None
                    ):
                        h0_total += count * child_a.h0 * child_b.h0
                    else:
                        h0_total = None
        claim = {"spec": spec.to_json(), "d": d, "vanishing_above": e}
        inner = (
            -sum(a for a in spec.abar if a < 0),
            sum(a for a in spec.abar if a > 0),
        )
        return Certificate(
            rule="gallgvan",
            claim=claim,
            measure=(d, _RANK["gallgvan"], *inner),
            children=children,
            h0=h0_total if e == 0 else None,
            detail={"direction": j, "pieces": piece_info},
        )

    # orbit bookkeeping: the graded factor specs depend only on |sigma|
    # and whether 0 lies in sigma, so classes are counted, not listed

    def _orbit_count(self, size, zero_in, d):
        q = self.q
        total = 0
        pool = range(1, d + 1) if not zero_in else range(0, d + 1)
        for sigma in itertools.combinations(pool, size):
            if zero_in and 0 not in sigma:
                continue
            total += q ** len(free_entries_u_tau(sigma, d))
        return total

    def _ladder_count(self, j, k, zero_in, d):
        q = self.q
        total = 0
        for tau in itertools.combinations(range(0, d + 1), k):
            if j not in tau or (0 in tau) != zero_in or len(tau) > d:
                continue
            full = len(free_entries_u_tau(tau, d))
            partial = len([e for e in free_entries_u_tau(tau, d) if e[1] != j])
            total += q**full - q**partial
        return total

    def _class_tau(self, size, zero_in, d):
        pool = [0] if zero_in else []
        pool += [i for i in range(1, d + 1) if len(pool) < size]
        return tuple(sorted(pool[:size]))

    def _class_tau_with_j(self, j, k, zero_in, d):
        tau = {j}
        if zero_in:
            tau.add(0)
        for i in range(1, d + 1):
            if len(tau) >= k:
                break
            tau.add(i) if i not in tau else None
        for i in range(1, d + 1):
            if len(tau) >= k:
                break
            if i not in tau:
                tau.add(i)
        return tuple(sorted(tau))

    # --- stable-set peeling ---

    def certify_wellvan(self, abar, stable_set, d, with_dims=True):
        key = (tuple(abar), frozenset(stable_set), d)
        if key not in self._wellvan_memo:
            self._wellvan_memo[key] = self._certify_wellvan(
                tuple(abar), frozenset(stable_set), d, with_dims
            )
        return self._wellvan_memo[key]

    def _certify_wellvan(self, abar, stable_set, d, with_dims):
        from .components import is_stable, join

        q = self.q
        if any(a > 0 for a in abar):
            raise NoApplicableRuleError("abar must be nonpositive", abar)
        if not is_stable(stable_set):
            raise NoApplicableRuleError("the subtracted set is not stable")
        zero = (0,) * d
        if not stable_set:
            return self.certify_spec(DivisorSpec(abar, zero, zero))
        if d == 1:
            deg = -abar[0] * (q - 1) - len(stable_set)
            if deg < -1:
                raise NoApplicableRuleError(
                    "negative-degree point removal on the line", abar
                )
            return Certificate(
                rule="base-P1",
                claim={
                    "abar": list(abar),
                    "removed": len(stable_set),
                    "d": 1,
                    "vanishing_above": 0,
                },
                measure=(1, 0),
                h0=deg + 1,
                detail={"degree": deg},
            )
        # the unique maximal element of a stable set
        top = None
        for s in stable_set:
            if top is None or s.projective_dim > top.projective_dim:
                top = s
        for s in stable_set:
            if not top.contains(s):
                raise NoApplicableRuleError("stable set has no maximal element")
        w = self._ambient_hyperplane(top, d)
        field = gf(q)
        ladder_steps = []
        children = []
        base = self.certify_spec(
            DivisorSpec(abar, (-1,) * d, zero)
        )
        children.append(base)
        h0_total = base.h0 if with_dims else None
        t_of_w = [
            s for s in all_components(d, q) if w.contains(s) and s != w or s == w
        ]
        t_of_w = [s for s in t_of_w if w.contains(s)]
        for i in range(1, d + 1):
            step_pieces = []
            for v in t_of_w:
                if v.projective_dim != i - 1 or v in stable_set:
                    continue
                tau, u = index_of(v)
                u_inv = mat_inv(u, field)
                s_moved = frozenset(act(u_inv, x) for x in stable_set)
                w_moved = act(u_inv, w)
                from .divisors import lower_factor_subspace, upper_factor_subspace

                upper_w = upper_factor_subspace(w_moved, tau, q) if len(tau) > 1 else None
                abar_tau = _restrict_abar(abar, tau, d)
                abar_tau_c = _restrict_abar(abar, _complement(tau, d), d)
                if upper_w is not None:
                    child_a = self.certify_spec(
                        DivisorSpec(
                            abar_tau, (-1,) * (len(tau) - 1), (0,) * (len(tau) - 1)
                        )
                    )
                else:
                    child_a = self.certify_spec(DivisorSpec((), (), ()))
                v_tau = coordinate_subspace(tau, q, d)
                rel_lower = frozenset(
                    lower_factor_subspace(x, tau, q)
                    for x in s_moved
                    if v_tau.contains(x) and x != v_tau
                )
                child_b = self.certify_wellvan(
                    abar_tau_c, rel_lower, d - len(tau), with_dims
                )
                children.extend([child_a, child_b])
                piece_h0 = (
                    child_a.h0 * child_b.h0
                    if child_a.h0 is not None and child_b.h0 is not None
                    else None
                )
                if (child_a.vanishing_above or 0) + (
                    child_b.vanishing_above or 0
                ) > 0:
                    raise NoApplicableRuleError(
                        "peeling piece does not vanish above 0", abar
                    )
                step_pieces.append(piece_h0)
            if h0_total is not None:
                if any(p is None for p in step_pieces):
                    h0_total = None
                else:
                    h0_total += sum(step_pieces)
            ladder_steps.append(len(step_pieces))
        claim = {
            "abar": list(abar),
            "stable_set": [s.to_json() for s in sorted(stable_set, key=lambda s: s.key())],
            "d": d,
            "vanishing_above": 0,
        }
        return Certificate(
            rule="wellvan",
            claim=claim,
            measure=(d, _RANK["wellvan"], len(stable_set)),
            children=children,
            h0=h0_total,
            detail={
                "witness_hyperplane": w.to_json(),
                "pieces_per_level": ladder_steps,
            },
        )

    def _ambient_hyperplane(self, top, d):
        q = self.q
        if top.projective_dim == d - 1:
            return top
        field = gf(q)
        eqs = nullspace(top.rows, field)
        functional = min(eqs)
        rows = nullspace([functional], field)
        return Subspace(rows=rows, ncols=d + 1, q=q)

    # --- restriction of sections to boundary strata ---

    def certify_kritvan_a(self, restricted_to, removed, abar, d):
        """Vanishing of the removed-set twist restricted to a stratum.

        ``restricted_to`` (S) and ``removed`` (S') are disjoint sets of
        components whose union is a chain, so the stratum is nonempty.
        """
        restricted_to = frozenset(restricted_to)
        removed = frozenset(removed)
        if restricted_to & removed:
            raise NoApplicableRuleError("S and S' must be disjoint")
        if not _is_chain(restricted_to | removed):
            raise NoApplicableRuleError(
                "the union is not a chain, the stratum is empty"
            )
        if any(a > 0 for a in abar):
            raise NoApplicableRuleError("abar must be nonpositive", abar)
        if not restricted_to:
            return self.certify_wellvan(abar, removed, d)
        s = max(restricted_to, key=lambda x: x.key())
        rest = restricted_to - {s}
        first = self.certify_kritvan_a(rest, removed | {s}, abar, d)
        second = self.certify_kritvan_a(rest, removed, abar, d)
        claim = {
            "abar": list(abar),
            "stratum_size": len(restricted_to),
            "removed_size": len(removed),
            "d": d,
            "vanishing_above": 0,
        }
        return Certificate(
            rule="kritvan-a",
            claim=claim,
            measure=(d, _RANK["kritvan-a"], len(restricted_to)),
            children=[first, second],
        )


def _complement(tau, d):
    return tuple(i for i in range(d + 1) if i not in tau)


def _restrict_abar(abar, tau, d):
    ext = (-sum(abar),) + tuple(abar)
    members = tuple(sorted(tau))
    return tuple(ext[i] for i in members[1:])


def _is_chain(components):
    items = sorted(components, key=lambda s: s.projective_dim)
    for a, b in itertools.combinations(items, 2):
        if not (a.contains(b) or b.contains(a)):
            return False
    return True


# --- public wrappers ---


def h0_dim(spec, q, session=None):
    """Exact h^0 of the structured divisor, with its certificate."""
    session = session or EngineSession(q)
    cert = session.certify_spec(spec)
    if cert.h0 is None:
        raise NoApplicableRuleError(
            "dimension not pinned by the available rules", spec
        )
    return cert.h0, cert


def certify_gallgvan(spec, q, session=None):
    session = session or EngineSession(q)
    return session.certify_spec(spec)


def certify_wellvan(abar, stable_set, d, q, session=None):
    session = session or EngineSession(q)
    return session.certify_wellvan(tuple(abar), stable_set, d)


def certify_kritvan(restricted_to, removed, abar, d, q, session=None):
    session = session or EngineSession(q)
    return session.certify_kritvan_a(restricted_to, removed, tuple(abar), d)


def validate_certificate(cert):
    """Replay structural soundness: measures decrease, claims cohere."""
    for child in cert.children:
        if not (tuple(child.measure) < tuple(cert.measure)):
            raise AssertionError(
                "measure does not decrease: %r -> %r" % (cert.measure, child.measure)
            )
        validate_certificate(child)
    if cert.rule == "base-P1" and "degree" in cert.detail:
        deg = cert.detail["degree"]
        if cert.h0 is not None and cert.h0 != max(0, deg + 1):
            raise AssertionError("base-P1 dimension mismatch")
        if deg >= 0 and cert.claim.get("all_t"):
            raise AssertionError("base-P1 claims too much vanishing")
    if cert.rule == "base-pullback":
        k = cert.detail["pullback_degree"]
        d = cert.claim["d"]
        want = comb(k + d, d) if k >= 0 else 0
        if cert.h0 is not None and cert.h0 != want:
            raise AssertionError("pullback dimension mismatch")
    if cert.rule in ("nullsta-a", "nullsta-b") and cert.children:
        main, child_a, child_b = cert.children
        if cert.h0 is not None and cert.rule == "nullsta-a":
            count = cert.detail["orbit_count"]
            if cert.h0 != main.h0 + count * child_a.h0 * child_b.h0:
                raise AssertionError("flat-rule dimension additivity fails")
    if cert.rule == "gallgvan" and cert.h0 is not None:
        total = cert.children[0].h0
        idx = 1
        for piece in cert.detail["pieces"]:
            a, b = cert.children[idx], cert.children[idx + 1]
            idx += 2
            total += piece["count"] * a.h0 * b.h0
        if total != cert.h0:
            raise AssertionError("ladder dimension additivity fails")
    return True
