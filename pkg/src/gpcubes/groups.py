"""Graph products of cyclic groups: presentation graphs, words, and the
word problem.

A presentation graph is a finite simplicial graph whose vertices carry an
order in {2, 3, ...} or infinity.  The associated group is generated by the
vertices, with each vertex s of finite order c satisfying s^c = 1 and two
generators commuting exactly when they are joined by an edge.

Elements are handled as words, i.e. sequences of letters (generator,
exponent).  Three rewriting moves never change the group element:

  (1) drop a letter with exponent 0,
  (2) merge two consecutive letters with the same generator,
  (3) swap two consecutive letters whose generators commute.

A word none of these can shorten is reduced.  We refine "reduced" to a
canonical normal form: exponents of finite-order generators are folded into
{1, ..., c-1} and, among all reduced words of the element, the
lexicographically least one (letters ordered by vertex position, then
exponent) is chosen.  Equality of elements is then syntactic equality of
normal forms; a slow rewriting-closure oracle is provided to keep the fast
path honest.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

Letter = tuple[str, int]

DEFAULT_WORD_BUDGET = 100_000
DEFAULT_ELEMENT_BUDGET = 100_000

_NAME_RE = re.compile(r"[^\s:#,^]+")


class GraphParseError(ValueError):
    """Malformed presentation graph file."""


class UnknownGeneratorError(ValueError):
    """A word uses a generator that is not a vertex of the graph."""


class PresentationMismatchError(ValueError):
    """Normal forms over different presentation graphs were combined."""


class BudgetExceededError(RuntimeError):
    """A configurable resource cap (element or word count) was hit."""


class OracleUndecidedError(BudgetExceededError):
    """The rewriting oracle ran out of budget before deciding."""


class LabeledGraph:
    """Finite simplicial graph with vertex orders in {2,3,...} or None (= infinity).

    The vertex list order is significant: it is the total order used for all
    lexicographic tie-breaking downstream.
    """

    def __init__(self, vertices, orders, edges):
        self.vertices = tuple(vertices)
        self.orders = dict(orders)
        self.edges = frozenset(frozenset(e) for e in edges)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphParseError("duplicate vertex name")
        for v in self.vertices:
            c = self.orders[v]
            if c is not None and c < 2:
                raise GraphParseError("vertex order must be >= 2 or inf: %r" % v)
        for e in self.edges:
            if len(e) != 2:
                raise GraphParseError("self-loop or malformed edge: %r" % sorted(e))
            for v in e:
                if v not in self.orders:
                    raise GraphParseError("unknown vertex in edge: %r" % v)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self._adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = sorted(e, key=self.index.__getitem__)
            self._adj[a].add(b)
            self._adj[b].add(a)

    def adjacent(self, s, t):
        return t in self._adj[s]

    def neighbors(self, s):
        return frozenset(self._adj[s])

    def order(self, s):
        return self.orders[s]

    def is_finite(self, s):
        return self.orders[s] is not None

    @property
    def finite_vertices(self):
        return tuple(v for v in self.vertices if self.is_finite(v))

    @property
    def infinite_vertices(self):
        return tuple(v for v in self.vertices if not self.is_finite(v))

    def to_text(self):
        """Canonical serialization in the graph file format."""
        lines = []
        for v in self.vertices:
            c = self.orders[v]
            lines.append("%s:%s" % (v, "inf" if c is None else c))
        for e in sorted(
            (sorted(e, key=self.index.__getitem__) for e in self.edges),
            key=lambda p: (self.index[p[0]], self.index[p[1]]),
        ):
            lines.append("edge %s %s" % (e[0], e[1]))
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, LabeledGraph)
            and self.vertices == other.vertices
            and self.orders == other.orders
            and self.edges == other.edges
        )

    def __repr__(self):
        return "LabeledGraph(%r)" % (self.vertices,)


def parse_graph(text):
    """Parse the graph file format.

    Lines are either "name:order" with order a decimal >= 2 or "inf",
    or "edge name name".  "#" starts a comment; blank lines are ignored.
    """
    vertices = []
    orders = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("edge ") or line == "edge":
            parts = line.split()
            if len(parts) != 3:
                raise GraphParseError("line %d: malformed edge line: %r" % (lineno, raw))
            _, a, b = parts
            if a not in orders:
                raise GraphParseError("line %d: unknown vertex in edge: %r" % (lineno, a))
            if b not in orders:
                raise GraphParseError("line %d: unknown vertex in edge: %r" % (lineno, b))
            if a == b:
                raise GraphParseError("line %d: self-loop on %r" % (lineno, a))
            edges.append((a, b))
        elif ":" in line:
            name, _, order_text = line.partition(":")
            name = name.strip()
            order_text = order_text.strip()
            if not name or not _NAME_RE.fullmatch(name) or name == "edge":
                raise GraphParseError("line %d: bad vertex name: %r" % (lineno, name))
            if name in orders:
                raise GraphParseError("line %d: duplicate vertex name: %r" % (lineno, name))
            if order_text == "inf":
                order = None
            else:
                try:
                    order = int(order_text)
                except ValueError:
                    raise GraphParseError(
                        "line %d: bad order %r for vertex %r" % (lineno, order_text, name)
                    ) from None
                if order < 2:
                    raise GraphParseError(
                        "line %d: order must be >= 2 or inf, got %d" % (lineno, order)
                    )
            vertices.append(name)
            orders[name] = order
        else:
            raise GraphParseError("line %d: malformed line: %r" % (lineno, raw))
    return LabeledGraph(vertices, orders, edges)


def parse_word(graph, text):
    """Parse a comma-separated word like "s^2, t^-1, s" into letters."""
    text = text.strip()
    if not text:
        return ()
    letters = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise UnknownGeneratorError("empty word token")
        name, sep, exp_text = token.rpartition("^")
        if sep:
            try:
                exp = int(exp_text)
            except ValueError:
                raise UnknownGeneratorError("bad exponent in token %r" % token) from None
        else:
            name, exp = token, 1
        if name not in graph.orders:
            raise UnknownGeneratorError("unknown generator %r" % name)
        if exp == 0:
            raise UnknownGeneratorError("zero exponent in token %r" % token)
        letters.append((name, exp))
    return tuple(letters)


def format_word(letters):
    if not letters:
        return "1"
    return " ".join(s if e == 1 else "%s^%d" % (s, e) for s, e in letters)


@dataclass(frozen=True)
class NormalForm:
    """Canonical reduced word for a group element, with its length cached.

    The length counts |exponent| for infinite-order letters and 1 for each
    finite-order letter.  Construct these through GraphProduct.normalize and
    friends; equality and hashing look at the letters only.
    """

    letters: tuple[Letter, ...]
    length: int = field(compare=False)
    graph: LabeledGraph = field(compare=False, repr=False, hash=False)

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        return format_word(self.letters)

    @property
    def is_identity(self):
        return not self.letters


# Hat alphabet: one vertex per finite-order generator, a pair of signed
# vertices per infinite-order generator (s and s^-1 are never adjacent).

def hat_name(graph, s, sign):
    if graph.is_finite(s):
        return s
    return s + ("+" if sign > 0 else "-")


def hat_names(graph):
    """The doubled alphabet, in deterministic order."""
    names = []
    for s in graph.vertices:
        if graph.is_finite(s):
            names.append(s)
        else:
            names.append(s + "+")
            names.append(s + "-")
    return tuple(names)


def hat_base(graph, name):
    """Split a hat vertex name into (base generator, sign)."""
    if name in graph.orders:
        if not graph.is_finite(name):
            raise ValueError("infinite generator %r needs a sign tag" % name)
        return name, 1
    base, tag = name[:-1], name[-1:]
    if tag in "+-" and base in graph.orders and not graph.is_finite(base):
        return base, (1 if tag == "+" else -1)
    raise ValueError("not a hat vertex of this graph: %r" % name)


class GraphProduct:
    """The graph product of cyclic groups presented by a LabeledGraph.

    All operations are pure; instances are safe to share between threads.
    """

    def __init__(self, graph):
        self.graph = graph
        self._identity = NormalForm((), 0, graph)

    # -- basic word handling ------------------------------------------------

    def _check_letters(self, letters):
        for s, _ in letters:
            if s not in self.graph.orders:
                raise UnknownGeneratorError("unknown generator %r" % s)

    def _fold(self, s, e):
        c = self.graph.orders[s]
        return e if c is None else e % c

    def word_length(self, letters):
        g = self.graph
        return sum(abs(e) if g.orders[s] is None else 1 for s, e in letters)

    def _letter_key(self, letter):
        return (self.graph.index[letter[0]], letter[1])

    def sort_key(self, nf):
        """(length, lex) key; total order on normal forms."""
        return (nf.length, tuple(self._letter_key(l) for l in nf.letters))

    # -- reduction and normal forms -----------------------------------------

    def reduce_word(self, letters):
        """One left-to-right stacking pass; returns a reduced word.

        Each incoming letter is folded (finite orders) and then merged with
        the rightmost same-generator letter it can reach across commuting
        letters; a merge to exponent 0 deletes the letter.
        """
        self._check_letters(letters)
        adjacent = self.graph.adjacent
        out = []
        for s, e in letters:
            e = self._fold(s, e)
            if e == 0:
                continue
            target = None
            for i in range(len(out) - 1, -1, -1):
                t = out[i][0]
                if t == s:
                    target = i
                    break
                if not adjacent(t, s):
                    break
            if target is None:
                out.append((s, e))
            else:
                merged = self._fold(s, out[target][1] + e)
                if merged == 0:
                    del out[target]
                else:
                    out[target] = (s, merged)
        return tuple(out)

    def _lex_least_shuffle(self, letters):
        # Greedy: repeatedly pull the least letter whose whole prefix
        # commutes with it to the front.  O(n^2), canonical on the
        # commutation class.
        pending = list(letters)
        adjacent = self.graph.adjacent
        out = []
        while pending:
            best = None
            for i, (s, e) in enumerate(pending):
                if all(adjacent(t, s) for t, _ in pending[:i]):
                    if best is None or self._letter_key((s, e)) < self._letter_key(pending[best]):
                        best = i
            out.append(pending.pop(best))
        return tuple(out)

    def normalize(self, word):
        """Canonical normal form of a word (tuple of letters or NormalForm)."""
        if isinstance(word, NormalForm):
            self._check_presentation(word)
            letters = word.letters
        else:
            letters = tuple(word)
        reduced = self.reduce_word(letters)
        canonical = self._lex_least_shuffle(reduced)
        return NormalForm(canonical, self.word_length(canonical), self.graph)

    @property
    def identity(self):
        return self._identity

    def generator(self, s, e=1):
        return self.normalize(((s, e),))

    def _check_presentation(self, nf):
        if nf.graph is not self.graph and nf.graph != self.graph:
            raise PresentationMismatchError(
                "normal form over %r used with %r" % (nf.graph, self.graph)
            )

    def multiply(self, a, b):
        self._check_presentation(a)
        self._check_presentation(b)
        return self.normalize(a.letters + b.letters)

    def invert(self, a):
        self._check_presentation(a)
        return self.normalize(tuple((s, -e) for s, e in reversed(a.letters)))

    def equal(self, w1, w2):
        """True iff the two words represent the same group element."""
        return self.normalize(w1) == self.normalize(w2)

    def length(self, g):
        self._check_presentation(g)
        return g.length

    # -- end letters and the hat alphabet -----------------------------------

    def end_letters(self, g):
        """Generators some reduced word for g ends in a power of."""
        self._check_presentation(g)
        adjacent = self.graph.adjacent
        letters = g.letters
        ends = set()
        for i, (s, _) in enumerate(letters):
            if all(adjacent(t, s) for t, _ in letters[i + 1 :]):
                ends.add(s)
        return frozenset(ends)

    def hat_subset(self, hat):
        """The standard subset of a hat vertex: the whole cyclic group for a
        finite generator, {1, s^sign} for an infinite one."""
        s, sign = hat_base(self.graph, hat)
        c = self.graph.orders[s]
        if c is None:
            return (self.identity, self.generator(s, sign))
        return tuple(self.generator(s, k) if k else self.identity for k in range(c))

    def desc_letters(self, g):
        """Hat vertices whose standard coset at g does not rise above g.

        A hat vertex h is descending for g iff max length over g<<h>> equals
        length(g); computed by enumerating the finite coset.
        """
        self._check_presentation(g)
        out = set()
        for hat in hat_names(self.graph):
            coset_max = max(self.multiply(g, h).length for h in self.hat_subset(hat))
            if coset_max == g.length:
                out.add(hat)
        return frozenset(out)

    # -- enumeration ---------------------------------------------------------

    def enumerate_ball(self, radius, max_elements=DEFAULT_ELEMENT_BUDGET):
        """All elements of length <= radius, as canonical normal forms."""
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        moves = [self.generator(s, e) for s in self.graph.vertices for e in (1, -1)]
        seen = {self.identity}
        queue = deque(seen)
        while queue:
            g = queue.popleft()
            for m in moves:
                h = self.multiply(g, m)
                if h.length <= radius and h not in seen:
                    seen.add(h)
                    if len(seen) > max_elements:
                        raise BudgetExceededError(
                            "ball of radius %d exceeds %d elements" % (radius, max_elements)
                        )
                    queue.append(h)
        return frozenset(seen)

    # -- the ground-truth oracle ----------------------------------------------

    def oracle_closure(self, word, budget=DEFAULT_WORD_BUDGET):
        """Closure of a word under the rewriting moves (1)-(3).

        Letters of finite-order generators are identified with their vertex
        group element (exponents taken mod the order) up front.  The moves
        never lengthen a word, so the closure is finite; it contains every
        reduced word of the element.
        """
        if isinstance(word, NormalForm):
            word = word.letters
        self._check_letters(word)
        adjacent = self.graph.adjacent
        start = tuple((s, self._fold(s, e)) for s, e in word)
        seen = {start}
        queue = deque(seen)
        while queue:
            w = queue.popleft()
            candidates = []
            for i, (s, e) in enumerate(w):
                if e == 0:
                    candidates.append(w[:i] + w[i + 1 :])
            for i in range(len(w) - 1):
                (s, e1), (t, e2) = w[i], w[i + 1]
                if s == t:
                    candidates.append(w[:i] + ((s, self._fold(s, e1 + e2)),) + w[i + 2 :])
                elif adjacent(s, t):
                    candidates.append(w[:i] + ((t, e2), (s, e1)) + w[i + 2 :])
            for cand in candidates:
                if cand not in seen:
                    seen.add(cand)
                    if len(seen) > budget:
                        raise OracleUndecidedError(
                            "rewriting closure exceeds budget %d" % budget
                        )
                    queue.append(cand)
        return frozenset(seen)

    def oracle_equal(self, w1, w2, budget=DEFAULT_WORD_BUDGET):
        """Ground-truth equality: do the rewriting closures intersect?

        Independent of normalize(); used to validate it.  Raises
        OracleUndecidedError if the budget runs out first.
        """
        c1 = self.oracle_closure(w1, budget)
        c2 = self.oracle_closure(w2, budget)
        return not c1.isdisjoint(c2)
