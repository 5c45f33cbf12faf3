"""Exact arithmetic substrate: rationals, sparse multivariate polynomials,
polynomial-entried matrices, and fraction-free exact linear algebra.

Everything here is exact.  Scalars are ``fractions.Fraction`` (arbitrary
precision, always in lowest terms, positive denominator).  A polynomial in
variables x1..xn is a sparse map

    exponent tuple (length n, nonnegative ints)  ->  Fraction

with no zero coefficients stored.  The zero polynomial has an empty term
map.  Equality is term-map equality, so identity testing is reliable; no
floating point appears anywhere.

The canonical text form orders terms by descending graded-lexicographic
order and writes coefficients as "p/q", e.g. "1/2*x1^2 - x2".  It
round-trips bit-exactly through :func:`MultiPoly.from_text`.

Rank, nullspace and linear solves on rational matrices go through a
single fraction-free (Bareiss) integer elimination, which keeps
intermediate entries as exact integers of controlled size.
"""

from __future__ import annotations

import math
from fractions import Fraction

Exponent = tuple[int, ...]

__all__ = [
    "Exponent",
    "Fraction",
    "format_rational",
    "parse_rational",
    "grlex_key",
    "monomials_up_to",
    "MultiPoly",
    "RatMatrix",
    "PolyMatrix",
]


def format_rational(value: Fraction) -> str:
    """Render a rational as "p" or "p/q" (q > 1 only)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (signs allowed on p)."""
    return Fraction(text.strip())


def grlex_key(exponent: Exponent) -> tuple:
    """Sort key giving descending graded-lex order under ascending sort."""
    return (-sum(exponent), tuple(-e for e in exponent))


def monomials_up_to(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of total degree <= degree, in graded-lex order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == nvars:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, pos + 1)

    rec([], degree, 0)
    out.sort(key=grlex_key)
    return out


class MultiPoly:
    """Sparse multivariate polynomial over the rationals.

    Immutable by convention: no method mutates ``terms`` after
    construction, and all arithmetic returns fresh objects.  nvars = 0
    (pure constants) is legal.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exponent, Fraction] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != nvars:
                raise ValueError(
                    f"exponent {exponent} has length {len(exponent)}, expected {nvars}"
                )
            if any(e < 0 for e in exponent):
                raise ValueError(f"negative exponent in {exponent}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[tuple(exponent)] = coeff
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> MultiPoly:
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exponent = [0] * nvars
        exponent[index] = 1
        return cls(nvars, {tuple(exponent): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exponent: Exponent, coeff) -> MultiPoly:
        return cls(nvars, {tuple(exponent): Fraction(coeff)})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Max total degree of a stored term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable-count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exponent, coeff in other.terms.items():
            total = terms.get(exponent, Fraction(0)) + coeff
            if total == 0:
                terms.pop(exponent, None)
            else:
                terms[exponent] = total
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                total = terms.get(exponent, Fraction(0)) + c1 * c2
                if total == 0:
                    terms.pop(exponent, None)
                else:
                    terms[exponent] = total
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def scale(self, factor) -> MultiPoly:
        factor = Fraction(factor)
        if factor == 0:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def __pow__(self, power: int) -> MultiPoly:
        if power < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.nvars, 1)
        for _ in range(power):
            result = result * self
        return result

    def evaluate(self, point) -> Fraction:
        """Exact substitution at a rational point (length must match nvars)."""
        point = [Fraction(v) for v in point]
        if len(point) != self.nvars:
            raise ValueError(f"point length {len(point)} != variable count {self.nvars}")
        total = Fraction(0)
        for exponent, coeff in self.terms.items():
            value = coeff
            for v, e in zip(point, exponent):
                if e:
                    value *= v**e
            total += value
        return total

    def partial(self, var: int) -> MultiPoly:
        """Formal partial derivative with respect to x_{var+1}."""
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range for {self.nvars} variables")
        terms: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            e = exponent[var]
            if e == 0:
                continue
            reduced = list(exponent)
            reduced[var] = e - 1
            terms[tuple(reduced)] = coeff * e
        return MultiPoly(self.nvars, terms)

    # -- equality / display --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.to_text()!r})"

    def to_text(self) -> str:
        """Canonical text form: descending graded-lex, "p/q" coefficients."""
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for position, (exponent, coeff) in enumerate(self.sorted_terms()):
            factors = [
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exponent)
                if e > 0
            ]
            magnitude = abs(coeff)
            if factors:
                body = "*".join(factors)
                if magnitude != 1:
                    body = f"{format_rational(magnitude)}*{body}"
            else:
                body = format_rational(magnitude)
            if position == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    @classmethod
    def from_text(cls, text: str, nvars: int) -> MultiPoly:
        """Parse the canonical text form (inverse of :meth:`to_text`)."""
        stripped = text.replace(" ", "")
        if not stripped:
            raise ValueError("empty polynomial text")
        if stripped == "0":
            return cls.zero(nvars)
        # Split into signed terms at top level (no parentheses in this format).
        terms: dict[Exponent, Fraction] = {}
        i = 0
        sign = 1
        if stripped[0] in "+-":
            sign = -1 if stripped[0] == "-" else 1
            i = 1
        start = i
        chunks: list[tuple[int, str]] = []
        while i <= len(stripped):
            if i == len(stripped) or stripped[i] in "+-":
                # A sign inside "p/q" never occurs (only leading), so any
                # +/- past position `start` separates terms.
                chunks.append((sign, stripped[start:i]))
                if i < len(stripped):
                    sign = -1 if stripped[i] == "-" else 1
                    start = i + 1
            i += 1
        for term_sign, chunk in chunks:
            if not chunk:
                raise ValueError(f"malformed polynomial text: {text!r}")
            coeff = Fraction(term_sign)
            exponent = [0] * nvars
            for factor in chunk.split("*"):
                if factor.startswith("x"):
                    if "^" in factor:
                        name, _, power_text = factor.partition("^")
                        power = int(power_text)
                    else:
                        name, power = factor, 1
                    index = int(name[1:]) - 1
                    if not 0 <= index < nvars:
                        raise ValueError(
                            f"variable {name} out of range for {nvars} variables"
                        )
                    exponent[index] += power
                else:
                    coeff *= Fraction(factor)
            key = tuple(exponent)
            total = terms.get(key, Fraction(0)) + coeff
            if total == 0:
                terms.pop(key, None)
            else:
                terms[key] = total
        return cls(nvars, terms)


class RatMatrix:
    """Rectangular matrix with exact rational entries (immutable by convention)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def zero(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def diagonal(cls, values) -> RatMatrix:
        values = [Fraction(v) for v in values]
        size = len(values)
        return cls(
            [[values[i] if i == j else 0 for j in range(size)] for i in range(size)]
        )

    @classmethod
    def from_columns(cls, columns) -> RatMatrix:
        columns = [list(c) for c in columns]
        if not columns:
            return cls([])
        height = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(height)])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> RatMatrix:
        return RatMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(v) for v in row) for row in self.entries
        )
        return f"RatMatrix[{self.rows}x{self.cols}: {body}]"

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_shape(other)
        return RatMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_shape(other)
        return RatMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> RatMatrix:
        return RatMatrix([[-v for v in row] for row in self.entries])

    def scale(self, factor) -> RatMatrix:
        factor = Fraction(factor)
        return RatMatrix([[v * factor for v in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        other_t = other.transpose().entries
        return RatMatrix(
            [
                [
                    sum((a * b for a, b in zip(row, col)), Fraction(0))
                    for col in other_t
                ]
                for row in self.entries
            ]
        )

    def apply(self, vector) -> tuple[Fraction, ...]:
        vector = [Fraction(v) for v in vector]
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((a * b for a, b in zip(row, vector)), Fraction(0))
            for row in self.entries
        )

    def commutator(self, other: RatMatrix) -> RatMatrix:
        return self * other - other * self

    def _check_shape(self, other: RatMatrix) -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- exact linear algebra -------------------------------------------------

    def _integer_rows(self) -> list[list[int]]:
        scaled = []
        for row in self.entries:
            denom = math.lcm(*(v.denominator for v in row)) if row else 1
            scaled.append([int(v * denom) for v in row])
        return scaled

    def _echelon(self) -> tuple[list[list[int]], list[int]]:
        """Fraction-free (Bareiss) row echelon form of an integer scaling.

        Returns the echelon rows and the list of pivot column indices.
        Divisions by the previous pivot are exact; a nonzero remainder
        would signal a bug and raises.
        """
        m = self._integer_rows()
        nrows, ncols = self.rows, self.cols
        pivots: list[int] = []
        prev = 1
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            for i in range(r + 1, nrows):
                if all(v == 0 for v in m[i][c:]):
                    continue
                head = m[i][c]
                for j in range(c + 1, ncols):
                    value = m[r][c] * m[i][j] - head * m[r][j]
                    quot, rem = divmod(value, prev)
                    if rem:
                        raise ArithmeticError("fraction-free elimination lost exactness")
                    m[i][j] = quot
                m[i][c] = 0
            prev = m[r][c]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        _, pivots = self._echelon()
        return len(pivots)

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Exact kernel basis via fraction-free elimination.

        One basis vector per free column, normalized to primitive integer
        entries with the first nonzero entry positive.  The list length is
        always cols - rank.
        """
        if self.cols == 0:
            return []
        if self.rows == 0:
            echelon: list[list[int]] = []
            pivots: list[int] = []
        else:
            echelon, pivots = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            vec = [Fraction(0)] * self.cols
            vec[f] = Fraction(1)
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                acc = sum(
                    (Fraction(echelon[r][j]) * vec[j] for j in range(pc + 1, self.cols)),
                    Fraction(0),
                )
                vec[pc] = -acc / echelon[r][pc]
            basis.append(_primitive(vec))
        return basis

    def solve(self, rhs) -> tuple[Fraction, ...]:
        """Solve self * x = rhs for a matrix of full column rank.

        Raises ValueError when the system is inconsistent or the columns
        are dependent.
        """
        rhs = [Fraction(v) for v in rhs]
        if len(rhs) != self.rows:
            raise ValueError("right-hand side length mismatch")
        augmented = RatMatrix(
            [list(row) + [rhs[i]] for i, row in enumerate(self.entries)]
        )
        echelon, pivots = augmented._echelon()
        if self.cols in pivots:
            raise ValueError("inconsistent linear system")
        if len(pivots) != self.cols:
            raise ValueError("matrix does not have full column rank")
        x = [Fraction(0)] * self.cols
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            acc = Fraction(echelon[r][self.cols])
            acc -= sum(
                (Fraction(echelon[r][j]) * x[j] for j in range(pc + 1, self.cols)),
                Fraction(0),
            )
            x[pc] = acc / echelon[r][pc]
        return tuple(x)

    def contains_in_column_span(self, vector) -> bool:
        vector = [Fraction(v) for v in vector]
        augmented = RatMatrix(
            [list(row) + [vector[i]] for i, row in enumerate(self.entries)]
        )
        return augmented.rank() == self.rank()


def _primitive(vector: list[Fraction]) -> tuple[Fraction, ...]:
    """Scale to integer entries with content 1 and first nonzero entry > 0."""
    denom = math.lcm(*(v.denominator for v in vector)) if vector else 1
    ints = [int(v * denom) for v in vector]
    content = 0
    for v in ints:
        content = math.gcd(content, abs(v))
    if content == 0:
        return tuple(Fraction(0) for _ in vector)
    ints = [v // content for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


class PolyMatrix:
    """Rectangular matrix with MultiPoly entries sharing one variable count."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries, nvars: int | None = None):
        rows = tuple(tuple(row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        seen = {p.nvars for row in rows for p in row}
        if len(seen) > 1:
            raise ValueError(f"mixed variable counts {sorted(seen)}")
        if nvars is None:
            if not seen:
                raise ValueError("variable count required for empty matrix")
            nvars = seen.pop()
        elif seen and seen != {nvars}:
            raise ValueError("entries disagree with declared variable count")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width
        self.nvars = nvars

    @classmethod
    def identity(cls, size: int, nvars: int) -> PolyMatrix:
        return cls(
            [
                [
                    MultiPoly.const(nvars, 1) if i == j else MultiPoly.zero(nvars)
                    for j in range(size)
                ]
                for i in range(size)
            ],
            nvars,
        )

    @classmethod
    def from_rational(cls, mat: RatMatrix, nvars: int) -> PolyMatrix:
        return cls(
            [[MultiPoly.const(nvars, v) for v in row] for row in mat.entries], nvars
        )

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[MultiPoly, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.nvars,
        )

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            self.nvars,
        )

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + other.scale(-1)

    def scale(self, factor) -> PolyMatrix:
        return PolyMatrix(
            [[p.scale(factor) for p in row] for row in self.entries], self.nvars
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        result = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = MultiPoly.zero(self.nvars)
                for k in range(self.cols):
                    left = self.entries[i][k]
                    if left.is_zero():
                        continue
                    right = other.entries[k][j]
                    if right.is_zero():
                        continue
                    acc = acc + left * right
                row.append(acc)
            result.append(row)
        return PolyMatrix(result, self.nvars)

    def matpow(self, power: int) -> PolyMatrix:
        """Exact power of a square matrix; power 0 gives the identity."""
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        if power < 0:
            raise ValueError("negative power")
        result = PolyMatrix.identity(self.rows, self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def apply(self, vector) -> tuple[MultiPoly, ...]:
        """Apply to a vector of MultiPoly or rational entries."""
        lifted = [
            v if isinstance(v, MultiPoly) else MultiPoly.const(self.nvars, v)
            for v in vector
        ]
        if len(lifted) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.entries:
            acc = MultiPoly.zero(self.nvars)
            for p, v in zip(row, lifted):
                if p.is_zero() or v.is_zero():
                    continue
                acc = acc + p * v
            out.append(acc)
        return tuple(out)

    def evaluate(self, point) -> RatMatrix:
        return RatMatrix(
            [[p.evaluate(point) for p in row] for row in self.entries]
        )
