"""Finitely presented categories with a decidable-in-practice word problem.

A category is presented by a quiver (named objects and generating arrows)
together with path relations and a symmetric table of formally inverse
generator pairs.  Paths compose diagrammatically: ``Path("x", ("f", "g"))``
means "f then g".  The word problem is attacked by shortlex Knuth-Bendix
completion over generator words; generator order is declaration order.  When
completion halts the rewriting system is confluent and ``normalize`` computes
canonical forms, which powers hom-set enumeration (``to_finite``), functor
checking, and everything downstream.

>>> zc = build(["*"], [("a", "*", "*")], invertible=["a"])
>>> rs = complete(zc)
>>> rs.status
'complete'
>>> normalize(zc, Path("*", ("a", "a^-1", "a"))).gens
('a',)
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .kernel import RuleTable

DEFAULT_RULE_BUDGET = 500
DEFAULT_HOM_BOUND = 64


class CatError(Exception):
    """Base class for domain errors."""


class DuplicateName(CatError):
    pass


class DanglingEndpoint(CatError):
    pass


class NonParallelRelation(CatError):
    pass


class IncompleteSystem(CatError):
    """An operation needed a confluent rewriting system and did not get one."""


class IncompleteSystemWarning(UserWarning):
    """normalize() was asked for canonical forms under a non-confluent system."""


class NotFinite(CatError):
    """Hom-set enumeration exceeded the bound.

    Carries the offending hom-set and the normal forms found there.
    """

    def __init__(self, src: str, dst: str, forms: Sequence["Path"]):
        self.src = src
        self.dst = dst
        self.forms = tuple(forms)
        super().__init__(
            f"hom({src}, {dst}) has more than {len(self.forms) - 1} normal forms"
        )


@dataclass(frozen=True)
class Generator:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """A composable word of generators starting at ``at``.

    ``gens`` empty means the identity at ``at``.  Composition is
    diagrammatic: the first entry is applied first.
    """

    at: str
    gens: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))

    @property
    def is_identity(self) -> bool:
        return not self.gens

    def to_json_obj(self) -> dict:
        return {"at": self.at, "gens": list(self.gens)}

    @staticmethod
    def from_json_obj(obj: Mapping) -> "Path":
        return Path(obj["at"], tuple(obj["gens"]))


Relation = tuple[Path, Path]


class Quiver:
    """Named objects plus generating arrows; the shape datum of a presentation."""

    def __init__(self, objects: Iterable[str], generators: Iterable[Generator]):
        self.objects: tuple[str, ...] = tuple(objects)
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            gens.append(g)
        self.generators: tuple[Generator, ...] = tuple(gens)
        seen: set[str] = set()
        for name in self.objects:
            if name in seen:
                raise DuplicateName(f"object {name!r} declared twice")
            seen.add(name)
        self._obj_set = frozenset(self.objects)
        self.gen_by_name: dict[str, Generator] = {}
        self.gen_index: dict[str, int] = {}
        for i, g in enumerate(self.generators):
            if g.name in seen or g.name in self.gen_by_name:
                raise DuplicateName(f"generator {g.name!r} clashes with an existing name")
            if g.src not in self._obj_set:
                raise DanglingEndpoint(f"generator {g.name!r} has unknown source {g.src!r}")
            if g.dst not in self._obj_set:
                raise DanglingEndpoint(f"generator {g.name!r} has unknown target {g.dst!r}")
            self.gen_by_name[g.name] = g
            self.gen_index[g.name] = i

    def has_object(self, name: str) -> bool:
        return name in self._obj_set

    def check_path(self, p: Path) -> None:
        """Raise unless ``p`` is a composable word rooted at a declared object."""
        if p.at not in self._obj_set:
            raise DanglingEndpoint(f"path starts at unknown object {p.at!r}")
        cur = p.at
        for name in p.gens:
            g = self.gen_by_name.get(name)
            if g is None:
                raise DanglingEndpoint(f"path uses unknown generator {name!r}")
            if g.src != cur:
                raise DanglingEndpoint(
                    f"generator {name!r} expects source {g.src!r}, path is at {cur!r}"
                )
            cur = g.dst

    def path_dst(self, p: Path) -> str:
        cur = p.at
        for name in p.gens:
            cur = self.gen_by_name[name].dst
        return cur

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.objects == other.objects
            and self.generators == other.generators
        )

    __hash__ = None  # type: ignore[assignment]


class FpCategory:
    """A presentation: quiver, path relations, and mate pairs of inverses."""

    def __init__(
        self,
        quiver: Quiver,
        relations: Iterable[Relation] = (),
        inverses: Mapping[str, str] | None = None,
    ):
        self.quiver = quiver
        rels = []
        for lhs, rhs in relations:
            quiver.check_path(lhs)
            quiver.check_path(rhs)
            if lhs.at != rhs.at or quiver.path_dst(lhs) != quiver.path_dst(rhs):
                raise NonParallelRelation(f"relation sides are not parallel: {lhs} vs {rhs}")
            rels.append((lhs, rhs))
        self.relations: tuple[Relation, ...] = tuple(rels)
        inv = dict(inverses or {})
        for g, m in inv.items():
            if g not in quiver.gen_by_name or m not in quiver.gen_by_name:
                raise DanglingEndpoint(f"inverse pair ({g!r}, {m!r}) names unknown generators")
            if inv.get(m) != g:
                raise NonParallelRelation(f"inverse table is not symmetric at {g!r}")
            gg, mm = quiver.gen_by_name[g], quiver.gen_by_name[m]
            if gg.src != mm.dst or gg.dst != mm.src:
                raise NonParallelRelation(f"mates {g!r}, {m!r} have incompatible endpoints")
            if not self._has_unit_relation(g, m):
                raise NonParallelRelation(f"marked pair ({g!r}, {m!r}) lacks its unit relations")
        self.inverses: dict[str, str] = inv
        self._completions: dict[int, "RewritingSystem"] = {}

    def _has_unit_relation(self, g: str, m: str) -> bool:
        src = self.quiver.gen_by_name[g].src
        want = (Path(src, (g, m)), Path(src))
        flipped = (want[1], want[0])
        return want in self.relations or flipped in self.relations

    @property
    def objects(self) -> tuple[str, ...]:
        return self.quiver.objects

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.quiver.generators

    def identity(self, obj: str) -> Path:
        if not self.quiver.has_object(obj):
            raise DanglingEndpoint(f"unknown object {obj!r}")
        return Path(obj)

    def completion(self, budget: int = DEFAULT_RULE_BUDGET) -> "RewritingSystem":
        rs = self._completions.get(budget)
        if rs is None:
            rs = complete(self, budget)
            self._completions[budget] = rs
        return rs

    def __eq__(self, other):
        return (
            isinstance(other, FpCategory)
            and self.quiver == other.quiver
            and self.relations == other.relations
            and self.inverses == other.inverses
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return (
            f"FpCategory({len(self.objects)} objects, {len(self.generators)} generators, "
            f"{len(self.relations)} relations)"
        )

    def to_json_obj(self) -> dict:
        return {
            "objects": list(self.objects),
            "generators": [
                {"name": g.name, "src": g.src, "dst": g.dst} for g in self.generators
            ],
            "relations": [
                {"lhs": l.to_json_obj(), "rhs": r.to_json_obj()} for l, r in self.relations
            ],
            "invertible": [g.name for g in self.generators if g.name in self.inverses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


def build(
    objects: Iterable[str],
    generators: Iterable[Generator | tuple[str, str, str]] = (),
    relations: Iterable[Relation | tuple] = (),
    invertible: Iterable[str] = (),
) -> FpCategory:
    """Assemble a presentation, expanding invertibility markings.

    Each name in ``invertible`` is paired with a mate: an existing generator
    already tied to it by the two unit relations if one is declared (scanning
    in declaration order), else a fresh ``<name>^-1`` generator with the unit
    relations appended.  The mate may be the generator itself when the
    presentation says it squares to an identity.
    """
    objects = tuple(objects)
    gens: list[Generator] = []
    for g in generators:
        gens.append(g if isinstance(g, Generator) else Generator(*g))
    rels: list[Relation] = []
    for lhs, rhs in relations:
        if not isinstance(lhs, Path):
            lhs = Path(*lhs)
        if not isinstance(rhs, Path):
            rhs = Path(*rhs)
        rels.append((lhs, rhs))

    wanted = list(dict.fromkeys(invertible))
    by_name = {g.name: g for g in gens}
    for name in wanted:
        if name not in by_name:
            raise DanglingEndpoint(f"invertible marking names unknown generator {name!r}")

    def has_unit(a: str, b: str) -> bool:
        src = by_name[a].src
        want = (Path(src, (a, b)), Path(src))
        return want in rels or (want[1], want[0]) in rels

    inverses: dict[str, str] = {}
    for name in wanted:
        if name in inverses:
            continue
        g = by_name[name]
        mate = None
        for cand in gens:
            if cand.src == g.dst and cand.dst == g.src:
                if has_unit(name, cand.name) and has_unit(cand.name, name):
                    mate = cand.name
                    break
        if mate is None:
            mate = f"{name}^-1"
            if mate in by_name or mate in objects:
                raise DuplicateName(f"cannot synthesize mate {mate!r}: name in use")
            mg = Generator(mate, g.dst, g.src)
            gens.append(mg)
            by_name[mate] = mg
            rels.append((Path(g.src, (name, mate)), Path(g.src)))
            rels.append((Path(g.dst, (mate, name)), Path(g.dst)))
        inverses[name] = mate
        inverses[mate] = name

    return FpCategory(Quiver(objects, gens), rels, inverses)


def from_json(doc: Union[str, Mapping]) -> FpCategory:
    obj = json.loads(doc) if isinstance(doc, str) else doc
    return build(
        obj["objects"],
        [(g["name"], g["src"], g["dst"]) for g in obj["generators"]],
        [
            (Path.from_json_obj(r["lhs"]), Path.from_json_obj(r["rhs"]))
            for r in obj["relations"]
        ],
        obj.get("invertible", ()),
    )


def discrete(names: Iterable[str]) -> FpCategory:
    return build(tuple(names))


def terminal(name: str = "pt") -> FpCategory:
    return build((name,))


# ---------------------------------------------------------------------------
# Completion


class RewritingSystem:
    """Oriented, interreduced rules over a presentation's generator words."""

    def __init__(self, cat: FpCategory, rules: Sequence[Relation], status: str):
        self.cat = cat
        self.rules = tuple(rules)
        self.status = status  # "complete" | "incomplete"
        idx = cat.quiver.gen_index
        self._table = RuleTable(
            [
                (tuple(idx[n] for n in l.gens), tuple(idx[n] for n in r.gens))
                for l, r in self.rules
            ]
        )
        self._names = tuple(g.name for g in cat.quiver.generators)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def reduce_word(self, word: tuple[int, ...]) -> tuple[int, ...]:
        return self._table.reduce(word)

    def normalize(self, p: Path) -> Path:
        self.cat.quiver.check_path(p)
        if not self.complete:
            warnings.warn(
                "rewriting system is not confluent; returning a best-effort reduct",
                IncompleteSystemWarning,
                stacklevel=2,
            )
        idx = self.cat.quiver.gen_index
        out = self._table.reduce(tuple(idx[n] for n in p.gens))
        return Path(p.at, tuple(self._names[i] for i in out))


def _shortlex_key(word: tuple[int, ...]) -> tuple:
    return (len(word), word)


def _orient(w1: tuple[int, ...], w2: tuple[int, ...]):
    k1, k2 = _shortlex_key(w1), _shortlex_key(w2)
    if k1 == k2:
        return None
    return (w1, w2) if k1 > k2 else (w2, w1)


def _reduce_with(rules: Sequence[tuple], word: tuple[int, ...]) -> tuple[int, ...]:
    return RuleTable(rules).reduce(word) if rules else tuple(word)


def _interreduce(rules: list[tuple]) -> list[tuple]:
    rules = sorted(set(rules), key=lambda lr: (_shortlex_key(lr[0]), _shortlex_key(lr[1])))
    changed = True
    while changed:
        changed = False
        for i, (lhs, rhs) in enumerate(rules):
            others = rules[:i] + rules[i + 1 :]
            # a rule's own lhs can never match inside its rhs (shortlex), so
            # reducing both sides by the other rules is a full interreduction
            lhs2 = _reduce_with(others, lhs)
            rhs2 = _reduce_with(others, rhs)
            if lhs2 == lhs and rhs2 == rhs:
                continue
            rules.pop(i)
            oriented = _orient(lhs2, rhs2)
            if oriented is not None:
                rules.append(oriented)
                rules.sort(key=lambda lr: (_shortlex_key(lr[0]), _shortlex_key(lr[1])))
            changed = True
            break
    return rules


def _critical_pairs(rules: Sequence[tuple]) -> Iterator[tuple[tuple, tuple]]:
    for (l1, r1) in rules:
        for (l2, r2) in rules:
            top = min(len(l1), len(l2))
            for k in range(1, top):
                if l1[-k:] == l2[:k]:
                    # overlap word l1 + l2[k:], rewritten two ways
                    yield (r1 + l2[k:], l1[:-k] + r2)


def complete(cat: FpCategory, budget: int = DEFAULT_RULE_BUDGET) -> RewritingSystem:
    """Shortlex Knuth-Bendix completion with a total rule-addition budget.

    Generator names determine endpoints, so typed words behave exactly like
    strings here; no extra composability bookkeeping is needed.
    """
    if budget < len(cat.relations):
        raise ValueError("budget smaller than the number of relations")
    idx = cat.quiver.gen_index
    rules: list[tuple] = []
    for lhs, rhs in cat.relations:
        oriented = _orient(
            tuple(idx[n] for n in lhs.gens), tuple(idx[n] for n in rhs.gens)
        )
        if oriented is not None:
            rules.append(oriented)
    added = len(rules)
    status = "complete"
    while True:
        rules = _interreduce(rules)
        table = RuleTable(rules)
        fresh: list[tuple] = []
        seen = set(rules)
        for c1, c2 in _critical_pairs(rules):
            n1, n2 = table.reduce(c1), table.reduce(c2)
            oriented = _orient(n1, n2)
            if oriented is not None and oriented not in seen:
                seen.add(oriented)
                fresh.append(oriented)
        if not fresh:
            break
        if added + len(fresh) > budget:
            room = budget - added
            rules.extend(fresh[:room])
            added = budget
            status = "incomplete"
            rules = _interreduce(rules)
            break
        rules.extend(fresh)
        added += len(fresh)

    names = tuple(g.name for g in cat.quiver.generators)
    gens = cat.quiver.gen_by_name

    def decode(word: tuple[int, ...], at_hint: str) -> Path:
        if word:
            return Path(gens[names[word[0]]].src, tuple(names[i] for i in word))
        return Path(at_hint, ())

    out: list[Relation] = []
    for lhs, rhs in rules:
        at = gens[names[lhs[0]]].src
        out.append((decode(lhs, at), decode(rhs, at)))
    return RewritingSystem(cat, out, status)


def normalize(cat: FpCategory, p: Path, budget: int = DEFAULT_RULE_BUDGET) -> Path:
    """Canonical form of a path (warns when the system is not confluent)."""
    return cat.completion(budget).normalize(p)


def _require_complete(cat: FpCategory, budget: int) -> RewritingSystem:
    rs = cat.completion(budget)
    if not rs.complete:
        raise IncompleteSystem(
            f"completion exhausted its budget of {budget} rules; results would be unreliable"
        )
    return rs


def irreducible_words(
    cat: FpCategory, max_len: int, budget: int = DEFAULT_RULE_BUDGET
) -> dict[tuple[str, str], list[Path]]:
    """All normal-form words of length <= max_len, grouped by hom-set.

    Irreducible words form a factor-closed language, so breadth-first
    extension by single generators enumerates them exactly.
    """
    rs = _require_complete(cat, budget)
    idx = cat.quiver.gen_index
    lhs_set = {tuple(idx[n] for n in l.gens) for l, _ in rs.rules}
    max_lhs = max((len(l) for l in lhs_set), default=0)
    out_gens: dict[str, list[Generator]] = {x: [] for x in cat.objects}
    for g in cat.quiver.generators:
        out_gens[g.src].append(g)

    by_hom: dict[tuple[str, str], list[Path]] = {}
    level: list[tuple[str, str, tuple[int, ...]]] = []
    for x in cat.objects:
        by_hom.setdefault((x, x), []).append(Path(x))
        level.append((x, x, ()))
    names = tuple(g.name for g in cat.quiver.generators)
    for _ in range(max_len):
        nxt: list[tuple[str, str, tuple[int, ...]]] = []
        for src, dst, word in level:
            for g in out_gens[dst]:
                w2 = word + (idx[g.name],)
                ok = True
                for l in range(1, min(len(w2), max_lhs) + 1):
                    if w2[-l:] in lhs_set:
                        ok = False
                        break
                if not ok:
                    continue
                by_hom.setdefault((src, g.dst), []).append(
                    Path(src, tuple(names[i] for i in w2))
                )
                nxt.append((src, g.dst, w2))
        if not nxt:
            break
        level = nxt
    return by_hom


# ---------------------------------------------------------------------------
# Finite backend


class FiniteCategory:
    """Explicit objects, morphisms, and a composition table.

    Morphisms are dense int ids.  ``compose(f, g)`` is diagrammatic (f then
    g), matching Path order.  Instances built by ``to_finite`` carry the
    normal-form ``paths`` and a ``gen_image`` map from generator names.
    """

    def __init__(
        self,
        objects: Sequence[str],
        mor_src: Sequence[str],
        mor_dst: Sequence[str],
        compose: Mapping[tuple[int, int], int],
        identities: Mapping[str, int],
        labels: Sequence[str] | None = None,
        paths: Sequence[Path] | None = None,
        gen_image: Mapping[str, int] | None = None,
        validate: bool = True,
    ):
        self.objects = tuple(objects)
        self.mor_src = tuple(mor_src)
        self.mor_dst = tuple(mor_dst)
        self.compose_table = dict(compose)
        self.identities = dict(identities)
        self.labels = tuple(labels) if labels is not None else tuple(
            f"m{i}" for i in range(len(mor_src))
        )
        self.paths = tuple(paths) if paths is not None else None
        self.gen_image = dict(gen_image) if gen_image is not None else None
        self._hom: dict[tuple[str, str], tuple[int, ...]] = {}
        for s in self.objects:
            for d in self.objects:
                self._hom[(s, d)] = ()
        buckets: dict[tuple[str, str], list[int]] = {}
        for i in range(self.n):
            buckets.setdefault((self.mor_src[i], self.mor_dst[i]), []).append(i)
        for k, v in buckets.items():
            self._hom[k] = tuple(v)
        self._inverses: dict[int, int] | None = None
        if validate:
            self.validate()

    @property
    def n(self) -> int:
        return len(self.mor_src)

    def hom(self, src: str, dst: str) -> tuple[int, ...]:
        return self._hom[(src, dst)]

    def compose(self, f: int, g: int) -> int:
        out = self.compose_table.get((f, g))
        if out is None:
            raise DanglingEndpoint(f"morphisms {f} and {g} are not composable")
        return out

    def is_identity(self, i: int) -> bool:
        return self.identities.get(self.mor_src[i]) == i and self.mor_src[i] == self.mor_dst[i]

    def validate(self) -> None:
        seen = set()
        for x, i in self.identities.items():
            if x not in self.objects:
                raise DanglingEndpoint(f"identity declared at unknown object {x!r}")
            if self.mor_src[i] != x or self.mor_dst[i] != x:
                raise DanglingEndpoint(f"identity of {x!r} has wrong endpoints")
            seen.add(x)
        if seen != set(self.objects):
            raise DanglingEndpoint("missing identity morphism")
        for (f, g), h in self.compose_table.items():
            if self.mor_dst[f] != self.mor_src[g]:
                raise DanglingEndpoint("composition table pairs non-composable morphisms")
            if self.mor_src[h] != self.mor_src[f] or self.mor_dst[h] != self.mor_dst[g]:
                raise DanglingEndpoint("composite has wrong endpoints")
        n = self.n
        for f in range(n):
            if (self.identities[self.mor_src[f]], f) not in self.compose_table:
                raise DanglingEndpoint("composition table is missing an identity pair")
            if self.compose_table[(self.identities[self.mor_src[f]], f)] != f:
                raise NonParallelRelation("left identity law fails")
            if self.compose_table[(f, self.identities[self.mor_dst[f]])] != f:
                raise NonParallelRelation("right identity law fails")
        mors_from: dict[str, list[int]] = {x: [] for x in self.objects}
        for h in range(n):
            mors_from[self.mor_src[h]].append(h)
        for (f, g), fg in self.compose_table.items():
            for h in mors_from[self.mor_dst[g]]:
                if self.compose_table[(fg, h)] != self.compose_table[
                    (f, self.compose_table[(g, h)])
                ]:
                    raise NonParallelRelation("associativity fails")

    def inverses(self) -> dict[int, int]:
        """Two-sided inverses, computed once: i -> j with i;j and j;i identities."""
        if self._inverses is None:
            inv: dict[int, int] = {}
            for f in range(self.n):
                for g in self._hom[(self.mor_dst[f], self.mor_src[f])]:
                    if (
                        self.compose_table[(f, g)] == self.identities[self.mor_src[f]]
                        and self.compose_table[(g, f)] == self.identities[self.mor_src[g]]
                    ):
                        inv[f] = g
                        break
            self._inverses = inv
        return self._inverses

    def __eq__(self, other):
        return (
            isinstance(other, FiniteCategory)
            and self.objects == other.objects
            and self.mor_src == other.mor_src
            and self.mor_dst == other.mor_dst
            and self.compose_table == other.compose_table
            and self.identities == other.identities
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"FiniteCategory({len(self.objects)} objects, {self.n} morphisms)"


def to_finite(
    cat: FpCategory, bound: int = DEFAULT_HOM_BOUND, budget: int = DEFAULT_RULE_BUDGET
) -> FiniteCategory:
    """Enumerate normal forms per hom-set; stop when a length level adds none.

    Every nonempty level adds at least one normal form to some hom-set, so
    with the per-hom bound this always terminates: either the language dries
    up (finite category) or some hom-set exceeds ``bound`` (NotFinite).
    """
    rs = _require_complete(cat, budget)
    idx = cat.quiver.gen_index
    names = tuple(g.name for g in cat.quiver.generators)
    lhs_set = {tuple(idx[n] for n in l.gens) for l, _ in rs.rules}
    max_lhs = max((len(l) for l in lhs_set), default=0)
    out_gens: dict[str, list[Generator]] = {x: [] for x in cat.objects}
    for g in cat.quiver.generators:
        out_gens[g.src].append(g)

    words: list[tuple[str, tuple[int, ...]]] = []  # (src, word) in discovery order
    word_id: dict[tuple[str, tuple[int, ...]], int] = {}
    hom_count: dict[tuple[str, str], int] = {}
    hom_forms: dict[tuple[str, str], list[int]] = {}

    def add(src: str, dst: str, word: tuple[int, ...]) -> int:
        i = len(words)
        words.append((src, word))
        word_id[(src, word)] = i
        hom_count[(src, dst)] = hom_count.get((src, dst), 0) + 1
        hom_forms.setdefault((src, dst), []).append(i)
        if hom_count[(src, dst)] > bound:
            forms = [
                Path(src, tuple(names[k] for k in words[j][1]))
                for j in hom_forms[(src, dst)]
            ]
            raise NotFinite(src, dst, forms)
        return i

    mor_src: list[str] = []
    mor_dst: list[str] = []
    identities: dict[str, int] = {}
    for x in cat.objects:
        identities[x] = add(x, x, ())
        mor_src.append(x)
        mor_dst.append(x)

    level: list[tuple[str, str, tuple[int, ...]]] = [(x, x, ()) for x in cat.objects]
    while level:
        nxt: list[tuple[str, str, tuple[int, ...]]] = []
        for src, dst, word in level:
            for g in out_gens[dst]:
                w2 = word + (idx[g.name],)
                ok = True
                for l in range(1, min(len(w2), max_lhs) + 1):
                    if w2[-l:] in lhs_set:
                        ok = False
                        break
                if not ok:
                    continue
                add(src, g.dst, w2)
                mor_src.append(src)
                mor_dst.append(g.dst)
                nxt.append((src, g.dst, w2))
        level = nxt

    compose: dict[tuple[int, int], int] = {}
    for f, (fs, fw) in enumerate(words):
        fdst = mor_dst[f]
        for g, (gs, gw) in enumerate(words):
            if gs != fdst:
                continue
            red = rs.reduce_word(fw + gw)
            compose[(f, g)] = word_id[(fs, red)]

    paths = [Path(s, tuple(names[i] for i in w)) for s, w in words]
    gen_image = {
        g.name: word_id[(g.src, rs.reduce_word((idx[g.name],)))]
        for g in cat.quiver.generators
    }
    return FiniteCategory(
        cat.objects,
        mor_src,
        mor_dst,
        compose,
        identities,
        labels=[("id_" + s) if not p.gens else ";".join(p.gens) for (s, _), p in zip(words, paths)],
        paths=paths,
        gen_image=gen_image,
    )


def finite_to_fp(C: FiniteCategory) -> FpCategory:
    """Multiplication-table presentation: one generator per non-identity morphism."""
    gen_name: dict[int, str] = {}
    gens: list[tuple[str, str, str]] = []
    for i in range(C.n):
        if not C.is_identity(i):
            gen_name[i] = f"m{i}"
            gens.append((f"m{i}", C.mor_src[i], C.mor_dst[i]))
    rels: list[Relation] = []
    for f in sorted(gen_name):
        for g in sorted(gen_name):
            if C.mor_dst[f] != C.mor_src[g]:
                continue
            h = C.compose_table[(f, g)]
            lhs = Path(C.mor_src[f], (gen_name[f], gen_name[g]))
            rhs = Path(C.mor_src[f], () if C.is_identity(h) else (gen_name[h],))
            rels.append((lhs, rhs))
    return build(C.objects, gens, rels)


# ---------------------------------------------------------------------------
# Functors


class Functor:
    """A functor between presented or finite categories.

    ``gen_map`` is keyed by generator name (fp source) or morphism id (finite
    source); values are Paths (fp target) or morphism ids (finite target).
    Construction checks only shape; semantic validity is ``check_functor``.
    """

    def __init__(self, source, target, object_map: Mapping, gen_map: Mapping):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.gen_map = dict(gen_map)
        src_objects = source.objects if hasattr(source, "objects") else ()
        for x in src_objects:
            if x not in self.object_map:
                raise DanglingEndpoint(f"object {x!r} has no image")
        tgt_objects = set(target.objects)
        for x, y in self.object_map.items():
            if y not in tgt_objects:
                raise DanglingEndpoint(f"object image {y!r} is not in the target")
        if isinstance(source, FpCategory):
            for g in source.quiver.generators:
                if g.name not in self.gen_map:
                    raise DanglingEndpoint(f"generator {g.name!r} has no image")
        else:
            for i in range(source.n):
                if not source.is_identity(i) and i not in self.gen_map:
                    raise DanglingEndpoint(f"morphism {i} has no image")

    @property
    def source_is_fp(self) -> bool:
        return isinstance(self.source, FpCategory)

    @property
    def target_is_fp(self) -> bool:
        return isinstance(self.target, FpCategory)

    def apply_obj(self, x: str) -> str:
        return self.object_map[x]

    def apply_path(self, p: Path):
        """Image of a source path: a Path (fp target) or morphism id (finite)."""
        if not self.source_is_fp:
            raise TypeError("apply_path needs an fp source")
        if self.target_is_fp:
            gens: list[str] = []
            for name in p.gens:
                gens.extend(self.gen_map[name].gens)
            return Path(self.apply_obj(p.at), tuple(gens))
        C: FiniteCategory = self.target
        cur = C.identities[self.apply_obj(p.at)]
        for name in p.gens:
            cur = C.compose_table[(cur, self.gen_map[name])]
        return cur

    def apply_mor(self, i: int):
        """Image of a source morphism id (finite source)."""
        if self.source_is_fp:
            raise TypeError("apply_mor needs a finite source")
        if self.source.is_identity(i):
            y = self.apply_obj(self.source.mor_src[i])
            return self.target.identities[y] if not self.target_is_fp else Path(y)
        return self.gen_map[i]

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.object_map == other.object_map
            and self.gen_map == other.gen_map
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"Functor({self.source!r} -> {self.target!r})"

    def to_json_obj(self) -> dict:
        gm = {}
        for k, v in self.gen_map.items():
            key = k if isinstance(k, str) else str(k)
            gm[key] = v.to_json_obj() if isinstance(v, Path) else v
        return {"object_map": dict(self.object_map), "gen_map": gm}


def functor_from_json(source, target, obj: Mapping) -> Functor:
    gm: dict = {}
    for k, v in obj["gen_map"].items():
        key = k if isinstance(source, FpCategory) else int(k)
        gm[key] = Path.from_json_obj(v) if isinstance(v, Mapping) else v
    return Functor(source, target, obj["object_map"], gm)


def identity_functor(C) -> Functor:
    if isinstance(C, FpCategory):
        return Functor(
            C,
            C,
            {x: x for x in C.objects},
            {g.name: Path(g.src, (g.name,)) for g in C.quiver.generators},
        )
    return Functor(
        C,
        C,
        {x: x for x in C.objects},
        {i: i for i in range(C.n) if not C.is_identity(i)},
    )


def check_functor(F: Functor, budget: int = DEFAULT_RULE_BUDGET) -> bool:
    """True iff object/endpoint compatibility and relation preservation hold."""
    src, tgt = F.source, F.target
    if isinstance(src, FpCategory):
        for g in src.quiver.generators:
            img = F.gen_map[g.name]
            if isinstance(tgt, FpCategory):
                if not isinstance(img, Path):
                    return False
                try:
                    tgt.quiver.check_path(img)
                except CatError:
                    return False
                if img.at != F.apply_obj(g.src) or tgt.quiver.path_dst(img) != F.apply_obj(g.dst):
                    return False
            else:
                if not isinstance(img, int) or not (0 <= img < tgt.n):
                    return False
                if tgt.mor_src[img] != F.apply_obj(g.src) or tgt.mor_dst[img] != F.apply_obj(g.dst):
                    return False
        if isinstance(tgt, FpCategory):
            rs = tgt.completion(budget)
            for lhs, rhs in src.relations:
                li, ri = F.apply_path(lhs), F.apply_path(rhs)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", IncompleteSystemWarning)
                    ln, rn = rs.normalize(li), rs.normalize(ri)
                if ln != rn:
                    if not rs.complete:
                        raise IncompleteSystem(
                            "cannot decide relation preservation under an incomplete system"
                        )
                    return False
        else:
            for lhs, rhs in src.relations:
                if F.apply_path(lhs) != F.apply_path(rhs):
                    return False
        return True

    # finite source: images must respect endpoints, identities, and the table
    for i in range(src.n):
        img = F.apply_mor(i)
        x, y = F.apply_obj(src.mor_src[i]), F.apply_obj(src.mor_dst[i])
        if isinstance(tgt, FpCategory):
            if not isinstance(img, Path):
                return False
            try:
                tgt.quiver.check_path(img)
            except CatError:
                return False
            if img.at != x or tgt.quiver.path_dst(img) != y:
                return False
        else:
            if tgt.mor_src[img] != x or tgt.mor_dst[img] != y:
                return False
    if isinstance(tgt, FpCategory):
        rs = tgt.completion(budget)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IncompleteSystemWarning)
            for (f, g), h in src.compose_table.items():
                fi, gi, hi = F.apply_mor(f), F.apply_mor(g), F.apply_mor(h)
                lhs = rs.normalize(Path(fi.at, fi.gens + gi.gens))
                if lhs != rs.normalize(hi):
                    if not rs.complete:
                        raise IncompleteSystem(
                            "cannot decide composition preservation under an incomplete system"
                        )
                    return False
    else:
        for (f, g), h in src.compose_table.items():
            if tgt.compose_table[(F.apply_mor(f), F.apply_mor(g))] != F.apply_mor(h):
                return False
    return True


def compose_functors(F: Functor, G: Functor) -> Functor:
    """G after F, as a single functor (sources compose diagrammatically)."""
    if F.target is not G.source and F.target != G.source:
        raise DanglingEndpoint("functors are not composable")
    object_map = {x: G.apply_obj(y) for x, y in F.object_map.items()}
    gen_map: dict = {}
    if F.source_is_fp:
        for g in F.source.quiver.generators:
            img = F.gen_map[g.name]
            gen_map[g.name] = G.apply_path(img) if F.target_is_fp else G.apply_mor(img)
    else:
        for i in range(F.source.n):
            if F.source.is_identity(i):
                continue
            img = F.gen_map[i]
            gen_map[i] = G.apply_path(img) if F.target_is_fp else G.apply_mor(img)
    return Functor(F.source, G.target, object_map, gen_map)


def functors_equal(F: Functor, G: Functor, budget: int = DEFAULT_RULE_BUDGET) -> bool:
    """Equality of functors as morphism maps (normalizing fp-target images)."""
    if F.source != G.source or F.target != G.target:
        return False
    if F.object_map != G.object_map:
        return False
    keys = (
        [g.name for g in F.source.quiver.generators]
        if F.source_is_fp
        else [i for i in range(F.source.n) if not F.source.is_identity(i)]
    )
    if F.target_is_fp:
        rs = F.target.completion(budget)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IncompleteSystemWarning)
            for k in keys:
                if rs.normalize(F.gen_map[k]) != rs.normalize(G.gen_map[k]):
                    return False
    else:
        for k in keys:
            if F.gen_map[k] != G.gen_map[k]:
                return False
    return True
