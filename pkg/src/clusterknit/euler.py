"""Shuffle algebra, the weighted letter-insertion action, generating
functions of Euler characteristics, their evaluation, and a brute-force
flag-counting oracle on thin modules."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import mesh
from .errors import NonIntegralError, NotThinError
from .quiver import (
    CartanMatrix,
    ReducedWord,
    Weight,
    cartan,
    fundamental_weight,
    s_weight,
)


class ShuffleSeries:
    """Finite linear combination of words over {1..n} with exact rational
    coefficients.  Coefficients stay plain ints whenever possible; Fractions
    only appear through explicit rational scaling."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if coeff:
                    clean[tuple(word)] = coeff
        self.terms = clean

    @staticmethod
    def zero() -> "ShuffleSeries":
        return ShuffleSeries()

    @staticmethod
    def unit() -> "ShuffleSeries":
        return ShuffleSeries({(): 1})

    @staticmethod
    def word(*letters) -> "ShuffleSeries":
        return ShuffleSeries({tuple(letters): 1})

    def __eq__(self, other) -> bool:
        return isinstance(other, ShuffleSeries) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ShuffleSeries") -> "ShuffleSeries":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return ShuffleSeries(terms)

    def __neg__(self) -> "ShuffleSeries":
        return ShuffleSeries({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "ShuffleSeries") -> "ShuffleSeries":
        return self + (-other)

    def scale(self, c) -> "ShuffleSeries":
        return ShuffleSeries({w: Fraction(c) * v for w, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(
            isinstance(c, int) or c.denominator == 1 for c in self.terms.values()
        )

    def content(self, n: int = 0):
        """Letter-count vector, or None if the series is not homogeneous."""
        vecs = set()
        top = n
        for w in self.terms:
            top = max(top, max(w, default=0))
        for w in self.terms:
            vec = [0] * top
            for letter in w:
                vec[letter - 1] += 1
            vecs.add(tuple(vec))
        if len(vecs) != 1:
            return None
        return vecs.pop()

    def __repr__(self) -> str:
        return f"ShuffleSeries({to_text(self)})"


@lru_cache(maxsize=None)
def _shuffle_words(u: tuple, v: tuple) -> tuple:
    """Multiset of shuffles of two words, as ((word, multiplicity), ...)."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict = {}
    for w, m in _shuffle_words(u[1:], v):
        key = (u[0],) + w
        out[key] = out.get(key, 0) + m
    for w, m in _shuffle_words(u, v[1:]):
        key = (v[0],) + w
        out[key] = out.get(key, 0) + m
    return tuple(sorted(out.items()))


def shuffle(a: ShuffleSeries, b: ShuffleSeries) -> ShuffleSeries:
    """Commutative, associative shuffle product with unit w[]."""
    terms: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            c = cu * cv
            for w, m in _shuffle_words(u, v):
                terms[w] = terms.get(w, 0) + c * m
    return ShuffleSeries(terms)


def f_action(s: ShuffleSeries, i: int, lam: Weight, c: CartanMatrix) -> ShuffleSeries:
    """Letter insertion realizing the lowering operator: w[j_1..j_k] goes to
    sum_r (lam - alpha_{j_1} - ... - alpha_{j_r})(alpha_i^vee)
    w[j_1..j_r, i, j_{r+1}..j_k]."""
    col = [0] + [c[l, i] for l in range(1, c.n + 1)]
    lam_i = lam[i]
    ins = (i,)
    terms: dict = defaultdict(int)
    for word, coeff in s.terms.items():
        pairing = lam_i
        length = len(word)
        acc = 0
        # slots inside a run of the letter i all produce the same word;
        # accumulate their pairings and emit once per run boundary
        for r in range(length + 1):
            acc += pairing
            if r == length or word[r] != i:
                if acc:
                    terms[word[:r] + ins + word[r:]] += coeff * acc
                acc = 0
            if r < length:
                pairing -= col[word[r]]
    return ShuffleSeries(terms)


def e_action(s: ShuffleSeries, i: int) -> ShuffleSeries:
    """Drop the last letter when it equals i, else kill the word."""
    terms: dict = {}
    for word, coeff in s.terms.items():
        if word and word[-1] == i:
            key = word[:-1]
            terms[key] = terms.get(key, 0) + coeff
    return ShuffleSeries(terms)


def divided_f(
    s: ShuffleSeries,
    i: int,
    b: int,
    lam: Weight,
    c: CartanMatrix,
    require_integral: bool = False,
) -> ShuffleSeries:
    """Apply f_i b times and divide by b!.

    The division happens progressively (by m after the m-th application, so
    the intermediate series are the smaller divided powers f^(m)/1); on
    module-derived input each stage is integral and the arithmetic stays in
    plain ints."""
    if b < 0:
        raise ValueError("divided power needs b >= 0")
    out = s
    for m in range(1, b + 1):
        out = f_action(out, i, lam, c)
        if all(isinstance(v, int) and v % m == 0 for v in out.terms.values()):
            if m > 1:
                out = ShuffleSeries({w: v // m for w, v in out.terms.items()})
        elif require_integral:
            raise NonIntegralError(
                f"divided power f_{i}^({b}) produced non-integer coefficients"
            )
        else:
            out = out.scale(Fraction(1, m))
    return out


def b_exponents(word: ReducedWord, k: int, c: CartanMatrix):
    """(b_1, ..., b_k): b_k = 1 and
    b_j = (s_{i_{j+1}} ... s_{i_k}(w_{i_k}))(alpha_{i_j}^vee)."""
    letters = word.letters
    if not (1 <= k <= len(letters)):
        raise IndexError(f"k={k} out of range 1..{len(letters)}")
    bs = [0] * k
    bs[k - 1] = 1
    lam = fundamental_weight(letters[k - 1], c.n)
    for j in range(k - 1, 0, -1):
        lam = s_weight(lam, letters[j], c)
        bs[j - 1] = lam[letters[j - 1]]
    return tuple(bs)


def g_module(cat: mesh.CategoryModel, ordering, k: int) -> ShuffleSeries:
    """Generating function of flag Euler characteristics of the k-th
    summand of T_M^vee along the ordering: apply the divided lowering
    operators f_{i_1}^{(b_1)} ... f_{i_k}^{(b_k)} to the empty word,
    rightmost factor first, in weight w_{i_k}."""
    from .quiver import adapted_word

    mesh.validate_ordering(cat, ordering)
    word = adapted_word(cat, ordering)
    c = cartan(cat.terminal.q)
    bs = b_exponents(word, k, c)
    lam = fundamental_weight(word.letters[k - 1], c.n)
    series = ShuffleSeries.unit()
    for j in range(k, 0, -1):
        series = divided_f(
            series, word.letters[j - 1], bs[j - 1], lam, c, require_integral=True
        )
    return series


def evaluate_phi(s: ShuffleSeries, seq):
    """Evaluate on x_{i_1}(t_1) ... x_{i_m}(t_m): the polynomial
    sum_a coeff(i^a) t^a / a!, returned as a map from exponent tuples to
    exact rationals."""
    seq = tuple(seq)
    m = len(seq)
    poly: dict = {}

    def walk(word, l, exps):
        if l == m:
            if not word:
                contribution = Fraction(1)
                for e in exps:
                    contribution /= factorial(e)
                key = tuple(exps)
                poly[key] = poly.get(key, 0) + coeff * contribution
            return
        letter = seq[l]
        run = 0
        while run < len(word) and word[run] == letter:
            run += 1
        for a in range(run + 1):
            walk(word[a:], l + 1, exps + [a])

    for word, coeff in s.terms.items():
        walk(word, 0, [])
    return {k: v for k, v in poly.items() if v}


@dataclass(frozen=True)
class ThinModule:
    """Slots carrying a vertex label each, with an acyclic arrow relation:
    an arrow u -> v means every submodule containing slot u contains slot v.

    Only the zero/nonzero arrow pattern enters the chain count; whether a
    scalar assignment satisfies the defining relation of the algebra is the
    caller's responsibility."""

    slots: tuple
    arrows: tuple = ()

    def __post_init__(self):
        names = [s for (s, _) in self.slots]
        if len(set(names)) != len(names):
            raise NotThinError("duplicate slot names")
        nameset = set(names)
        for (u, v) in self.arrows:
            if u not in nameset or v not in nameset:
                raise NotThinError(f"arrow ({u},{v}) references unknown slot")
        # cycle check
        out = {s: [] for s in nameset}
        for (u, v) in self.arrows:
            out[u].append(v)
        seen: dict = {}

        def visit(x):
            if seen.get(x) == 1:
                raise NotThinError("arrow relation has a cycle")
            if seen.get(x) == 2:
                return
            seen[x] = 1
            for y in out[x]:
                visit(y)
            seen[x] = 2

        for sname in nameset:
            visit(sname)


def direct_sum(a: ThinModule, b: ThinModule, tags=("L", "R")) -> ThinModule:
    slots = tuple(((tags[0], s), v) for (s, v) in a.slots) + tuple(
        ((tags[1], s), v) for (s, v) in b.slots
    )
    arrows = tuple(((tags[0], u), (tags[0], v)) for (u, v) in a.arrows) + tuple(
        ((tags[1], u), (tags[1], v)) for (u, v) in b.arrows
    )
    return ThinModule(slots, arrows)


def flag_oracle(m: ThinModule) -> ShuffleSeries:
    """Enumerate all maximal chains of arrow-closed slot subsets, ascending,
    and emit the sum over chains of the word of added vertex labels."""
    vertex_of = dict(m.slots)
    targets = {s: set() for s in vertex_of}
    for (u, v) in m.arrows:
        targets[u].add(v)
    all_slots = frozenset(vertex_of)
    memo: dict = {}

    def complete(done: frozenset) -> ShuffleSeries:
        if done == all_slots:
            return ShuffleSeries.unit()
        if done in memo:
            return memo[done]
        terms: dict = {}
        for s in all_slots - done:
            if targets[s] <= done:
                rest = complete(done | {s})
                for w, c in rest.terms.items():
                    key = (vertex_of[s],) + w
                    terms[key] = terms.get(key, 0) + c
        res = ShuffleSeries(terms)
        memo[done] = res
        return res

    return complete(frozenset())


# -- text / json forms -------------------------------------------------------


def to_text(s: ShuffleSeries) -> str:
    """Terms c·w[...] sorted lexicographically by word."""
    if s.is_zero():
        return "0"
    parts = []
    for word in sorted(s.terms):
        c = s.terms[word]
        body = f"w[{','.join(str(x) for x in word)}]"
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c}·{body}")
    return " + ".join(parts).replace("+ -", "- ")


def to_json(s: ShuffleSeries) -> dict:
    return {
        ",".join(str(x) for x in word): str(coeff)
        for word, coeff in sorted(s.terms.items())
    }


def from_json(data: dict) -> ShuffleSeries:
    terms = {}
    for key, val in data.items():
        word = tuple(int(x) for x in key.split(",")) if key else ()
        terms[word] = Fraction(val)
    return ShuffleSeries(terms)
