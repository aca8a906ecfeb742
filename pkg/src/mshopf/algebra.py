"""Free commutative algebras over hashable generators, tensors and linear forms.

Generators only need ``sort_key`` (a totally ordered key, unique per class)
and ``grade``.  A monomial is a tuple of generators sorted by key; the empty
tuple is the unit.  Coefficients are exact :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable

Monomial = tuple
ONE: Monomial = ()


def mono(*gens) -> Monomial:
    return tuple(sorted(gens, key=lambda g: g.sort_key))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, key=lambda g: g.sort_key))


def mono_grade(m: Monomial) -> int:
    return sum(g.grade for g in m)


def _mono_key(m: Monomial):
    return tuple(g.sort_key for g in m)


class AlgebraElement:
    """Finite rational combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = Fraction(c)

    @classmethod
    def one(cls) -> AlgebraElement:
        return cls({ONE: 1})

    @classmethod
    def gen(cls, g, coeff=1) -> AlgebraElement:
        return cls({(g,): coeff})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> AlgebraElement:
        return cls({m: coeff})

    def _add_into(self, m, c):
        v = self.terms.get(m, 0) + c
        if v:
            self.terms[m] = v
        else:
            self.terms.pop(m, None)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement({ONE: other})
        out = AlgebraElement(self.terms)
        for m, c in other.terms.items():
            out._add_into(m, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, AlgebraElement) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return AlgebraElement({m: c * other for m, c in self.terms.items()})
        out = AlgebraElement()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add_into(mono_mul(m1, m2), c1 * c2)
        return out

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement({ONE: other})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((_mono_key(m), c) for m, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Terms sorted by monomial key (deterministic order)."""
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), _mono_key(t[0])))

    def counit(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def grades(self) -> set[int]:
        return {mono_grade(m) for m in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            body = "*".join(repr(g) for g in m) if m else "1"
            parts.append(f"{c}·{body}")
        return " + ".join(parts)


def counit(x: AlgebraElement) -> Fraction:
    return x.counit()


class Tensor:
    """Rational combination of k-tuples of monomials."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: dict | None = None, arity: int = 2):
        self.arity = arity
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = Fraction(c)

    @classmethod
    def unit(cls, arity: int = 2) -> Tensor:
        return cls({(ONE,) * arity: 1}, arity)

    def _add_into(self, k, c):
        v = self.terms.get(k, 0) + c
        if v:
            self.terms[k] = v
        else:
            self.terms.pop(k, None)

    def __add__(self, other: Tensor) -> Tensor:
        out = Tensor(self.terms, self.arity)
        for k, c in other.terms.items():
            out._add_into(k, c)
        return out

    def __neg__(self):
        return Tensor({k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return Tensor({k: c * other for k, c in self.terms.items()}, self.arity)
        out = Tensor(arity=self.arity)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out._add_into(tuple(mono_mul(a, b) for a, b in zip(k1, k2)), c1 * c2)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((tuple(_mono_key(m) for m in k), c) for k, c in self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(
            self.terms.items(),
            key=lambda t: tuple((len(m), _mono_key(m)) for m in t[0]),
        )

    def __repr__(self):
        parts = []
        for k, c in self.items():
            body = " ⊗ ".join("*".join(repr(g) for g in m) if m else "1" for m in k)
            parts.append(f"{c}·({body})")
        return " + ".join(parts) if parts else "0"

    @staticmethod
    def from_element(x: AlgebraElement) -> Tensor:
        return Tensor({(m,): c for m, c in x.terms.items()}, 1)


def tensor(*xs: AlgebraElement) -> Tensor:
    """Tensor product of algebra elements."""
    out = {(): Fraction(1)}
    for x in xs:
        nxt: dict = {}
        for k, c in out.items():
            for m, d in x.terms.items():
                key = k + (m,)
                nxt[key] = nxt.get(key, 0) + c * d
        out = nxt
    return Tensor(out, len(xs))


def extend_multiplicatively(x: AlgebraElement, on_gen: Callable, unit) -> object:
    """Evaluate the algebra morphism determined by ``on_gen`` on ``x``.

    ``on_gen`` returns an object supporting ``*`` and ``+`` (AlgebraElement,
    Tensor or a scalar ring element); ``unit`` is the image of 1.
    """
    total = None
    for m, c in x.items():
        v = unit
        for g in m:
            v = v * on_gen(g)
        term = v * c
        total = term if total is None else total + term
    return total if total is not None else unit * 0


def apply_to_factor(t: Tensor, k: int, fn: Callable[[AlgebraElement], object]) -> Tensor:
    """Apply a linear map ``AlgebraElement -> Tensor`` (or element) on factor ``k``.

    The factor is replaced by the arity-``j`` image, so the arity grows by
    ``j - 1``.
    """
    out: Tensor | None = None
    cache: dict = {}
    for key, c in t.items():
        m = key[k]
        img = cache.get(m)
        if img is None:
            img = fn(AlgebraElement.monomial(m))
            if isinstance(img, AlgebraElement):
                img = Tensor.from_element(img)
            cache[m] = img
        for sub, d in img.terms.items():
            new = key[:k] + sub + key[k + 1:]
            if out is None:
                out = Tensor(arity=len(new))
            out._add_into(new, c * d)
    if out is None:
        out = Tensor(arity=t.arity)
    return out


def multiply_out(t: Tensor) -> AlgebraElement:
    """The multiplication map m: A⊗...⊗A -> A."""
    out = AlgebraElement()
    for key, c in t.terms.items():
        m = ONE
        for part in key:
            m = mono_mul(m, part)
        out._add_into(m, c)
    return out


# ---------------------------------------------------------------------------
# linear forms, characters and convolution


class LinearForm:
    """Linear map from the algebra to a commutative target ring.

    ``on_monomial`` gives the value on a monomial; values are cached.  The
    coproduct used for convolution is ``coproduct(generator) -> Tensor``;
    ``one`` is the unit of the target ring.
    """

    def __init__(self, on_monomial: Callable, coproduct: Callable, one=Fraction(1), name: str = ""):
        self._on_monomial = on_monomial
        self.coproduct = coproduct
        self.one = one
        self.name = name
        self._cache: dict = {}

    @property
    def zero(self):
        return self.one * 0

    def on_monomial(self, m: Monomial):
        v = self._cache.get(m)
        if v is None:
            v = self._on_monomial(m)
            self._cache[m] = v
        return v

    def __call__(self, x):
        if isinstance(x, AlgebraElement):
            total = self.zero
            for m, c in x.items():
                total = total + self.on_monomial(m) * c
            return total
        if isinstance(x, tuple):
            return self.on_monomial(x)
        return self.on_monomial((x,))

    def __repr__(self):
        return f"{type(self).__name__}({self.name or '?'})"


class Character(LinearForm):
    """Multiplicative linear form determined by its values on generators."""

    def __init__(self, on_generator: Callable, coproduct: Callable, one=Fraction(1), name: str = ""):
        self.on_generator = on_generator
        self._gen_cache: dict = {}
        super().__init__(self._mono_value, coproduct, one, name)

    def gen_value(self, g):
        v = self._gen_cache.get(g)
        if v is None:
            v = self.on_generator(g)
            self._gen_cache[g] = v
        return v

    def _mono_value(self, m: Monomial):
        v = self.one
        for g in m:
            v = v * self.gen_value(g)
        return v


class InfinitesimalCharacter(LinearForm):
    """ε-derivation: nonzero only on single generators."""

    def __init__(self, on_generator: Callable, coproduct: Callable, one=Fraction(1), name: str = ""):
        self.on_generator = on_generator
        super().__init__(self._mono_value, coproduct, one, name)

    def _mono_value(self, m: Monomial):
        if len(m) != 1:
            return self.zero
        return self.on_generator(m[0])


def counit_form(coproduct: Callable, one=Fraction(1)) -> Character:
    return Character(lambda g: one * 0, coproduct, one, "ε")


def monomial_coproduct(m: Monomial, coproduct: Callable) -> Tensor:
    t = Tensor.unit()
    for g in m:
        t = t * coproduct(g)
    return t


def convolve(a: LinearForm, b: LinearForm) -> LinearForm:
    """(a ∗ b) = m ∘ (a ⊗ b) ∘ Δ.  Characters convolve to characters."""
    if a.coproduct is not b.coproduct:
        raise ValueError("convolution needs both forms over the same coproduct")
    if type(a.one) is not type(b.one):
        raise ValueError("convolution needs both forms over the same target ring")
    delta = a.coproduct

    def value(m):
        total = a.zero
        for (l, r), c in monomial_coproduct(m, delta).items():
            total = total + a.on_monomial(l) * b.on_monomial(r) * c
        return total

    name = f"({a.name}∗{b.name})"
    if isinstance(a, Character) and isinstance(b, Character):
        return Character(lambda g: value((g,)), delta, a.one, name)
    return LinearForm(value, delta, a.one, name)


def compose_antipode(a: LinearForm, antipode: Callable[[AlgebraElement], AlgebraElement]) -> LinearForm:
    """a ∘ S; for a character this is its convolution inverse."""
    if isinstance(a, Character):
        return Character(lambda g: a(antipode(AlgebraElement.gen(g))), a.coproduct, a.one, f"{a.name}∘S")
    return LinearForm(lambda m: a(antipode(AlgebraElement.monomial(m))), a.coproduct, a.one, f"{a.name}∘S")


def _power_series(base: LinearForm, coeffs: Callable[[int], Fraction], max_grade: int, kind):
    """Σ_n coeffs(n) base^{∗n}, truncated at ``max_grade`` (base must vanish on 1)."""
    powers = [counit_form(base.coproduct, base.one)]
    for _ in range(max_grade):
        powers.append(convolve(powers[-1], base))

    def value(m):
        if mono_grade(m) > max_grade:
            raise ValueError(f"grade {mono_grade(m)} exceeds truncation {max_grade}")
        total = base.zero
        for n, p in enumerate(powers):
            c = coeffs(n)
            if c:
                total = total + p.on_monomial(m) * c
        return total

    return kind(value)


def conv_exp(d: InfinitesimalCharacter, max_grade: int) -> Character:
    """exp_*(d) = Σ d^{∗n}/n!, exact on generators of grade ≤ max_grade."""
    form = _power_series(
        d, lambda n: Fraction(1, math.factorial(n)), max_grade, lambda f: f
    )
    return Character(lambda g: form((g,)), d.coproduct, d.one, f"exp({d.name})")


def conv_log(a: Character, max_grade: int) -> InfinitesimalCharacter:
    """log_*(a) = Σ_{n≥1} (-1)^{n+1}/n (a - ε)^{∗n}."""
    eps = counit_form(a.coproduct, a.one)
    shifted = LinearForm(
        lambda m: a.on_monomial(m) - eps.on_monomial(m), a.coproduct, a.one, f"{a.name}-ε"
    )
    form = _power_series(
        shifted,
        lambda n: Fraction((-1) ** (n + 1), n) if n else Fraction(0),
        max_grade,
        lambda f: f,
    )
    return InfinitesimalCharacter(lambda g: form((g,)), a.coproduct, a.one, f"log({a.name})")


def forms_agree(a: LinearForm, b: LinearForm, xs: Iterable) -> bool:
    return all(a(x) == b(x) for x in xs)
