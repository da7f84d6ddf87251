"""
Module descriptions for the etale-modules toolkit
Tokenizer, recursive-descent parser and printer for the text format that
names a matrix Lie algebra and a module over it.
"""

# GRAMMAR
#
# spec
#   group ':' module
# group
#   factor ( 'x' factor )...
# factor
#   ( 'gl' | 'sl' | 'so' | 'sp' ) '(' INT ')'
# module
#   term ( '+' term )...
# term
#   atom ( '*' atom )...          tensor product
# atom
#   'std' '(' INT ')'             standard module of factor INT, 1-based
#   'dual' '(' INT ')'
#   'ad' '(' INT ')'              factor INT on its traceless matrices
#   'trivial'
#   'chain' [ '(' INT ')' ]       E_m over all factors; INT pads the first slot

import logging
import re
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from src.algebra.castling import TensorShape
from src.algebra.liealg import LieAlgebra, classical_algebra, product
from src.algebra.rep import (
    Representation, adjoint_traceless_rep, chain_rep, direct_sum_rep,
    factor_dual_rep, factor_standard_rep, tensor_rep, trivial_rep,
)
from src.models.entities import FactorKind, FamilyName
from src.models.errors import InvalidAlgebraError, SpecSyntaxError

logger = logging.getLogger(__name__)

FACTOR_KINDS = ("gl", "sl", "so", "sp")
INDEXED_ATOMS = ("std", "dual", "ad")
BARE_ATOMS = ("trivial", "chain")

# an x directly before a factor name is a separator of its own: "so(3)xgl(2)"
_TOKEN_RE = re.compile(
    r"(?P<newline>\n)|(?P<space>[ \t\r]+)|(?P<int>\d+)"
    rf"|(?P<name>x(?=(?:{'|'.join(FACTOR_KINDS)})\s*\()|[A-Za-z_]+)"
    r"|(?P<punct>[():+*])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class FactorSpec:
    kind: FactorKind
    size: int

    def __str__(self) -> str:
        return f"{self.kind.value}({self.size})"


@dataclass(frozen=True)
class Atom:
    name: str
    index: Optional[int] = None
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)

    def __str__(self) -> str:
        return self.name if self.index is None else f"{self.name}({self.index})"


@dataclass(frozen=True)
class Term:
    atoms: Tuple[Atom, ...]

    def __str__(self) -> str:
        return " * ".join(str(a) for a in self.atoms)


@dataclass(frozen=True)
class ModuleSpec:
    factors: Tuple[FactorSpec, ...]
    terms: Tuple[Term, ...]

    def __str__(self) -> str:
        return format_module_spec(self)


def tokenize(text: str) -> Iterator[Token]:
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        column = pos - line_start + 1
        pos = match.end()
        if kind == "newline":
            line, line_start = line + 1, pos
        elif kind != "space":
            yield Token(kind, match.group(), line, column)
    yield Token("eof", "", line, pos - line_start + 1)


class _Parser:
    """Recursive descent over the token stream, one method per grammar rule."""

    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        raise SpecSyntaxError(message, token.line, token.column)

    def _advance(self) -> Token:
        token = self.current
        if token.kind != "eof":
            self.pos += 1
        return token

    def _expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of input"
            self._fail(f"expected {text!r}, found {found!r}")
        return self._advance()

    def _positive_int(self) -> int:
        token = self.current
        if token.kind != "int":
            self._fail(f"expected an integer, found {token.text or 'end of input'!r}")
        self._advance()
        value = int(token.text)
        if value < 1:
            self._fail("sizes and indices start at 1", token)
        return value

    def _parenthesized_int(self) -> int:
        self._expect("(")
        value = self._positive_int()
        self._expect(")")
        return value

    def spec(self) -> ModuleSpec:
        factors = self.group()
        self._expect(":")
        terms = self.module()
        if self.current.kind != "eof":
            self._fail(f"unexpected {self.current.text!r} after the module")
        return ModuleSpec(tuple(factors), tuple(terms))

    def group(self) -> List[FactorSpec]:
        factors = [self.factor()]
        while self.current.text == "x":
            self._advance()
            factors.append(self.factor())
        return factors

    def factor(self) -> FactorSpec:
        token = self.current
        if token.kind != "name" or token.text not in FACTOR_KINDS:
            self._fail(f"expected one of {', '.join(FACTOR_KINDS)}, found {token.text or 'end of input'!r}")
        self._advance()
        return FactorSpec(FactorKind(token.text), self._parenthesized_int())

    def module(self) -> List[Term]:
        terms = [self.term()]
        while self.current.text == "+":
            self._advance()
            terms.append(self.term())
        return terms

    def term(self) -> Term:
        atoms = [self.atom()]
        while self.current.text == "*":
            self._advance()
            atoms.append(self.atom())
        return Term(tuple(atoms))

    def atom(self) -> Atom:
        token = self.current
        if token.kind != "name" or token.text not in INDEXED_ATOMS + BARE_ATOMS:
            self._fail(f"expected std, dual, ad, trivial or chain, found {token.text or 'end of input'!r}")
        self._advance()
        if token.text in INDEXED_ATOMS:
            return Atom(token.text, self._parenthesized_int(), token.line, token.column)
        if token.text == "chain" and self.current.text == "(":
            return Atom(token.text, self._parenthesized_int(), token.line, token.column)
        return Atom(token.text, None, token.line, token.column)


def parse_module_spec(text: str) -> ModuleSpec:
    return _Parser(text).spec()


def format_module_spec(spec: ModuleSpec) -> str:
    group = " x ".join(str(f) for f in spec.factors)
    module = " + ".join(str(t) for t in spec.terms)
    return f"{group} : {module}"


def _atom_rep(atom: Atom, L: LieAlgebra, factors: Tuple[FactorSpec, ...]) -> Representation:
    if atom.name in INDEXED_ATOMS and atom.index > len(factors):
        raise SpecSyntaxError(
            f"{atom}: there is no factor {atom.index} (the group has {len(factors)})",
            atom.line, atom.column,
        )
    if atom.name == "std":
        return factor_standard_rep(L, atom.index - 1)
    if atom.name == "dual":
        return factor_dual_rep(L, atom.index - 1)
    if atom.name == "ad":
        return adjoint_traceless_rep(L, atom.index - 1)
    if atom.name == "trivial":
        return trivial_rep(L, 1)
    slots = [f.ambient_size for f in L.factors]
    if atom.index is not None:
        slots[0] = atom.index
    return chain_rep(L, slots)


def build_module(spec: ModuleSpec) -> Tuple[LieAlgebra, Representation]:
    L = product([classical_algebra(f.kind, f.size) for f in spec.factors])
    pieces = []
    for term in spec.terms:
        R = _atom_rep(term.atoms[0], L, spec.factors)
        for atom in term.atoms[1:]:
            R = tensor_rep(R, _atom_rep(atom, L, spec.factors))
        pieces.append(R)
    R = direct_sum_rep(pieces)
    return L, R.relabel(format_module_spec(spec))


def parse_spec(text: str) -> Tuple[LieAlgebra, Representation]:
    """Parse module text and build the algebra and its representation."""
    spec = parse_module_spec(text)
    L, R = build_module(spec)
    logger.debug("parsed %s: dim g %d, dim V %d", R.label, L.dim, R.dim_v)
    return L, R


def shape_from_spec(text: str) -> TensorShape:
    """Read "<core factors> x gl(n) : <core atoms> * std(k)" with gl(n) the last factor k."""
    spec = parse_module_spec(text)
    last = len(spec.factors)
    if last < 2 or spec.factors[-1].kind is not FactorKind.GL:
        raise SpecSyntaxError("a tensor shape needs a core group followed by a final gl(n)")
    if len(spec.terms) != 1:
        raise SpecSyntaxError("a tensor shape is a single tensor product term")
    atoms = spec.terms[0].atoms
    tail = atoms[-1]
    if len(atoms) < 2 or tail.name != "std" or tail.index != last:
        raise SpecSyntaxError(f"the last atom of a tensor shape must be std({last})", tail.line, tail.column)
    for atom in atoms[:-1]:
        if atom.name == "chain" or atom.index == last:
            raise SpecSyntaxError(f"{atom} cannot appear in the core of a tensor shape", atom.line, atom.column)
    core_spec = ModuleSpec(spec.factors[:-1], (Term(atoms[:-1]),))
    _, core = build_module(core_spec)
    return TensorShape(core, spec.factors[-1].size)


def family_spec_text(name, n: int = 2) -> str:
    """The module text of a family member."""
    family = name if isinstance(name, FamilyName) else FamilyName.parse(name)
    if family is FamilyName.HELMSTETTER:
        return "sp(2) x gl(3) x gl(2) x gl(1) x gl(1) : std(1) * std(4) + std(1) * std(2) + std(2) * std(3) + ad(3) * std(5)"
    if family is FamilyName.SO_CHAIN:
        if n < 2:
            raise InvalidAlgebraError(f"so-chain needs n >= 2, got {n}")
        return " x ".join([f"so({n})"] + [f"gl({k})" for k in range(n - 1, 0, -1)]) + " : chain"
    if n < 1:
        raise InvalidAlgebraError(f"{family.value} needs n >= 1, got {n}")
    top = 2 * n - 1 if family is FamilyName.SP_CHAIN else 2 * n
    group = " x ".join([f"sp({n})"] + [f"gl({k})" for k in range(top, 0, -1)])
    if family is FamilyName.SP_CHAIN:
        return f"{group} : std(1) + chain"
    return f"{group} : chain({2 * n + 1})"


def match_family(spec: ModuleSpec) -> Optional[Tuple[FamilyName, int]]:
    """The (family, n) whose module text spec reproduces, if any."""
    if not spec.factors:
        return None
    head = spec.factors[0]
    text = format_module_spec(spec)
    candidates = []
    if head.kind is FactorKind.SP:
        candidates = [FamilyName.SP_CHAIN, FamilyName.SP_E_ONLY]
    elif head.kind is FactorKind.SO and head.size >= 2:
        candidates = [FamilyName.SO_CHAIN]
    for family in candidates:
        if family_spec_text(family, head.size) == text:
            return family, head.size
    if text == family_spec_text(FamilyName.HELMSTETTER):
        return FamilyName.HELMSTETTER, 2
    return None
