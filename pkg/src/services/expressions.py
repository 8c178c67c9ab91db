"""
Expression parsing - group words and automorphism expressions

Grammar (whitespace ignored):
    expr   := factor ('*'? factor)*
    factor := atom ('^' INT)?
    atom   := NAME args? | '(' expr ')'
    args   := '[' INT (',' INT)* ']'

Names are matched longest-first against the context alphabet, so in the gamma
context "cu" is one identifier while in the g6 context "ce" is c followed by e.
Parsed expressions are flattened to freely reduced words of Letters.
"""
import logging
import re
from dataclasses import dataclass
from typing import Optional, Sequence

logger = logging.getLogger(__name__)

G6_GROUP_LETTERS = ('x', 'y', 'z')
G6_AUT_LETTERS = ('a', 'b', 'c', 'd', 'e', 'f', 'i', 'j')
GAMMA_GROUP_LETTERS = ('u', 'v', 'z')
GAMMA_AUT_LETTERS = ('b', 'r', 'cu', 'cv', 'cz', 'k')

CONTEXTS = {
    'g6': G6_AUT_LETTERS + G6_GROUP_LETTERS,
    'gamma': GAMMA_AUT_LETTERS + GAMMA_GROUP_LETTERS,
}

# identifiers that require a bracketed argument list, and how many arguments
PARAMETRIC = {'k': 2}

_INT = re.compile(r'[+-]?\d+')


class ExpressionError(ValueError):
    """Syntax error or unknown identifier, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f'{message} at position {position}')
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Letter:
    name: str
    args: tuple[int, ...] = ()
    exponent: int = 1

    def inverse(self) -> 'Letter':
        return Letter(self.name, self.args, -self.exponent)

    def format(self) -> str:
        text = self.name
        if self.args:
            text += '[' + ','.join(str(a) for a in self.args) + ']'
        if self.exponent != 1:
            text += f'^{self.exponent}'
        return text


Word = tuple[Letter, ...]


def invert_word(word: Sequence[Letter]) -> Word:
    return tuple(letter.inverse() for letter in reversed(word))


def reduce_word(letters: Sequence[Letter]) -> Word:
    """Merge adjacent powers of the same identifier and drop zero exponents."""
    stack: list[Letter] = []
    for letter in letters:
        if letter.exponent == 0:
            continue
        if stack and stack[-1].name == letter.name and stack[-1].args == letter.args:
            merged = stack[-1].exponent + letter.exponent
            stack.pop()
            if merged:
                stack.append(Letter(letter.name, letter.args, merged))
        else:
            stack.append(letter)
    return tuple(stack)


def format_word(word: Sequence[Letter]) -> str:
    return '*'.join(letter.format() for letter in word)


def expand_letters(word: Sequence[Letter]) -> list[tuple[str, tuple[int, ...], int]]:
    """One (name, args, +1/-1) entry per unit power, in order."""
    out = []
    for letter in word:
        sign = 1 if letter.exponent > 0 else -1
        out.extend([(letter.name, letter.args, sign)] * abs(letter.exponent))
    return out


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.text = text
        self.pos = 0
        # longest names first so multi-character identifiers win
        self.names = sorted(alphabet, key=len, reverse=True)

    def error(self, message: str, position: Optional[int] = None):
        raise ExpressionError(message, self.pos if position is None else position)

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def integer(self) -> int:
        self.skip_space()
        match = _INT.match(self.text, self.pos)
        if not match:
            self.error('expected an integer')
        self.pos = match.end()
        return int(match.group())

    def expect(self, char: str):
        if self.peek() != char:
            self.error(f"expected '{char}'")
        self.pos += 1

    def parse(self) -> list[Letter]:
        letters = self.expression()
        if self.peek():
            self.error(f"unexpected '{self.peek()}'")
        return letters

    def expression(self) -> list[Letter]:
        letters: list[Letter] = []
        while True:
            char = self.peek()
            if char == '*':
                if not letters:
                    self.error("'*' without a left operand")
                self.pos += 1
                char = self.peek()
                if not char or char in ')*^':
                    self.error("'*' without a right operand")
            if not char or char == ')':
                return letters
            letters.extend(self.factor())

    def factor(self) -> list[Letter]:
        atom = self.atom()
        if self.peek() == '^':
            self.pos += 1
            exponent = self.integer()
            if len(atom) == 1 and not isinstance(atom, _Grouped):
                return [Letter(atom[0].name, atom[0].args, atom[0].exponent * exponent)]
            base = list(atom) if exponent >= 0 else list(invert_word(atom))
            return base * abs(exponent)
        return list(atom)

    def atom(self) -> list[Letter]:
        char = self.peek()
        if char == '(':
            self.pos += 1
            inner = _Grouped(self.expression())
            self.expect(')')
            return inner
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                args: tuple[int, ...] = ()
                if name in PARAMETRIC:
                    args = self.arguments(name)
                return [Letter(name, args)]
        if char.isalpha():
            self.error(f"unknown identifier '{char}'")
        self.error(f"unexpected '{char}'" if char else 'unexpected end of input')
        return []

    def arguments(self, name: str) -> tuple[int, ...]:
        start = self.pos
        self.expect('[')
        values = [self.integer()]
        while self.peek() == ',':
            self.pos += 1
            values.append(self.integer())
        self.expect(']')
        if len(values) != PARAMETRIC[name]:
            self.error(f'{name} takes {PARAMETRIC[name]} arguments', start)
        return tuple(values)


class _Grouped(list):
    """A parenthesised sub-word; its exponent applies to the whole group."""


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse text over the given alphabet into a freely reduced word."""
    letters = _Parser(text or '', alphabet).parse()
    word = reduce_word(letters)
    logger.debug('parsed %r -> %s', text, format_word(word))
    return word


def parse_expression(text: str, context: str) -> Word:
    """
    Parse a group word or automorphism expression in a named context.

    Args:
        text: expression such as "j*a", "x^2y^2z^-2" or "k[1,0]*r"
        context: 'g6' or 'gamma'

    Returns:
        Freely reduced word of Letters; the empty word is the identity
    """
    if context not in CONTEXTS:
        raise ValueError(f'unknown expression context {context!r}')
    return parse_word(text, CONTEXTS[context])
