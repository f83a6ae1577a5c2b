"""CoNLL-2009 corpus reading/writing and dependency tree construction.

Column layout (tab-separated, 14 + N columns):
ID FORM LEMMA PLEMMA POS PPOS FEAT PFEAT HEAD PHEAD DEPREL PDEPREL
FILLPRED PRED APRED1..APREDN

`column_mode` selects which column family populates the tokens: "gold" uses
POS/HEAD/DEPREL, "auto" uses PPOS/PHEAD/PDEPREL. Predicate marks (FILLPRED,
PRED) and APRED role columns are shared between the modes.
"""

from collections import deque
from dataclasses import dataclass, field

GOLD = "gold"
AUTO = "auto"

MIN_COLUMNS = 14


class CorpusError(ValueError):
    """Malformed CoNLL-2009 input; message carries sentence/line context."""


@dataclass(frozen=True)
class Token:
    index: int            # 1-based position
    form: str
    lemma: str
    pos: str
    head: int             # 0 = artificial root
    deprel: str
    is_predicate: bool = False
    pred_sense: str = None
    apreds: tuple = ()    # one role string (or None) per predicate column


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: tuple                 # of Token
    predicates: tuple             # predicate token indices, in order
    source: str                   # GOLD or AUTO
    raw_rows: tuple = field(default=(), repr=False, compare=False)

    def __len__(self):
        return len(self.tokens)

    def token(self, index):
        return self.tokens[index - 1]


@dataclass(frozen=True)
class ArgumentAssignment:
    sentence_id: int
    predicate_index: int
    arguments: frozenset          # of token indices
    label_kind: str               # "silver" | "predicted" | "gold"
    roles: dict = None            # token index -> role string (gold only)


class DependencyTree:
    """Rooted tree over 0..n token indices (0 = artificial root) with depth,
    LCA, and path queries."""

    def __init__(self, heads):
        """`heads` maps token index (1-based) to parent index."""
        self.n = len(heads)
        self.head = {i: h for i, h in heads.items()}
        self.children = {i: [] for i in range(self.n + 1)}
        for i in sorted(heads):
            self.children[heads[i]].append(i)
        self.depth = {0: 0}
        queue = deque([0])
        visited = 1
        while queue:
            node = queue.popleft()
            for child in self.children[node]:
                self.depth[child] = self.depth[node] + 1
                visited += 1
                queue.append(child)
        if visited != self.n + 1:
            unreachable = sorted(set(range(1, self.n + 1)) - set(self.depth))
            raise CorpusError("cycle detected involving token %d" % unreachable[0])

    def ancestors(self, node):
        """Path from `node` up to and including the root (node first)."""
        path = [node]
        while node != 0:
            node = self.head[node]
            path.append(node)
        return path

    def lca(self, a, b):
        anc = set(self.ancestors(a))
        for node in self.ancestors(b):
            if node in anc:
                return node
        return 0

    def distance(self, a, b):
        lca = self.lca(a, b)
        return self.depth[a] + self.depth[b] - 2 * self.depth[lca]

    def path(self, a, b):
        """Node sequence from a to b through their LCA."""
        lca = self.lca(a, b)
        up = []
        node = a
        while node != lca:
            up.append(node)
            node = self.head[node]
        down = []
        node = b
        while node != lca:
            down.append(node)
            node = self.head[node]
        return up + [lca] + list(reversed(down))

    def descendants(self, node):
        out = []
        queue = deque(self.children[node])
        while queue:
            cur = queue.popleft()
            out.append(cur)
            queue.extend(self.children[cur])
        return out


def _parse_block(rows, sentence_id, first_line, column_mode):
    n = len(rows)
    width = len(rows[0])
    if width < MIN_COLUMNS:
        raise CorpusError("sentence %d (line %d): row has %d columns, "
                          "need >= %d" % (sentence_id, first_line, width,
                                          MIN_COLUMNS))
    n_apred = width - MIN_COLUMNS
    pos_col, head_col, dep_col = (4, 8, 10) if column_mode == GOLD else (5, 9, 11)
    tokens = []
    predicates = []
    for offset, row in enumerate(rows):
        line_no = first_line + offset
        if len(row) != width:
            raise CorpusError("sentence %d (line %d): ragged row width %d != %d"
                              % (sentence_id, line_no, len(row), width))
        try:
            head = int(row[head_col])
        except ValueError:
            raise CorpusError("sentence %d (line %d): non-integer head %r"
                              % (sentence_id, line_no, row[head_col]))
        if head < 0 or head > n:
            raise CorpusError("sentence %d (line %d): head %d out of range 0..%d"
                              % (sentence_id, line_no, head, n))
        index = offset + 1
        if head == index:
            raise CorpusError("sentence %d (line %d): token is its own head"
                              % (sentence_id, line_no))
        is_pred = row[12] == "Y"
        if is_pred:
            predicates.append(index)
        apreds = tuple(cell if cell != "_" else None
                       for cell in row[MIN_COLUMNS:])
        tokens.append(Token(
            index=index,
            form=row[1],
            lemma=row[2],
            pos=row[pos_col],
            head=head,
            deprel=row[dep_col],
            is_predicate=is_pred,
            pred_sense=row[13] if is_pred and row[13] != "_" else None,
            apreds=apreds,
        ))
    if n_apred and len(predicates) != n_apred:
        raise CorpusError("sentence %d (line %d): %d FILLPRED marks but %d "
                          "APRED columns" % (sentence_id, first_line,
                                             len(predicates), n_apred))
    return AnnotatedSentence(tokens=tuple(tokens), predicates=tuple(predicates),
                             source=column_mode,
                             raw_rows=tuple(tuple(r) for r in rows))


def read_conll09(path, column_mode=GOLD):
    """Parse a CoNLL-2009 file into a list of AnnotatedSentence."""
    if column_mode not in (GOLD, AUTO):
        raise ValueError("column_mode must be 'gold' or 'auto'")
    sentences = []
    rows = []
    first_line = 1
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                if rows:
                    sentences.append(_parse_block(rows, len(sentences),
                                                  first_line, column_mode))
                    rows = []
                continue
            if not rows:
                first_line = line_no
            rows.append(line.split("\t"))
    if rows:
        sentences.append(_parse_block(rows, len(sentences), first_line,
                                      column_mode))
    return sentences


def write_conll09(path, sentences):
    """Write sentences back out; each block is followed by one blank line
    (trailing whitespace is normalized away)."""
    with open(path, "w", encoding="utf-8") as f:
        for sentence in sentences:
            for row in sentence.raw_rows:
                f.write("\t".join(row))
                f.write("\n")
            f.write("\n")


def build_tree(sentence):
    """Construct the DependencyTree for a sentence (pure, deterministic)."""
    heads = {tok.index: tok.head for tok in sentence.tokens}
    return DependencyTree(heads)


def gold_arguments(sentences):
    """Extract gold ArgumentAssignments from the APRED columns.

    A token is a gold argument of the k-th predicate iff its k-th APRED cell
    is non-"_".
    """
    out = []
    for sid, sentence in enumerate(sentences):
        for k, pred_index in enumerate(sentence.predicates):
            roles = {}
            for tok in sentence.tokens:
                if k < len(tok.apreds) and tok.apreds[k] is not None:
                    roles[tok.index] = tok.apreds[k]
            out.append(ArgumentAssignment(
                sentence_id=sid,
                predicate_index=pred_index,
                arguments=frozenset(i for i in roles if i != pred_index),
                label_kind="gold",
                roles=roles,
            ))
    return out


def verb_predicates(sentence):
    """Predicate indices whose POS starts with 'VB' (verb predicates only)."""
    return tuple(p for p in sentence.predicates
                 if sentence.token(p).pos.startswith("VB"))
