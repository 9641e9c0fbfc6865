"""Finite posets and finite categories with explicit composition tables."""

from dataclasses import dataclass


class Poset:
    """A finite poset given by its elements and order relation."""

    def __init__(self, elements, leq_pairs):
        self.elements = list(elements)
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("duplicate poset elements")
        self._leq = set()
        for a, b in leq_pairs:
            if a not in idx or b not in idx:
                raise ValueError(f"relation on unknown element: {(a, b)}")
            self._leq.add((a, b))
        for e in self.elements:
            self._leq.add((e, e))
        # transitivity closure check (we require the input to be closed)
        for a, b in list(self._leq):
            for c in self.elements:
                if (b, c) in self._leq and (a, c) not in self._leq:
                    raise ValueError(f"order not transitively closed at {(a, b, c)}")
        for a, b in self._leq:
            if a != b and (b, a) in self._leq:
                raise ValueError(f"antisymmetry fails at {(a, b)}")

    def leq(self, a, b):
        return (a, b) in self._leq

    def opposite(self):
        return Poset(self.elements, [(b, a) for a, b in self._leq])

    @staticmethod
    def from_leq(elements, leq):
        """Build from a predicate, closing nothing (predicate must be an order)."""
        elements = list(elements)
        pairs = [(a, b) for a in elements for b in elements if leq(a, b)]
        return Poset(elements, pairs)


@dataclass
class Morphism:
    name: str
    dom: object
    cod: object


class FinCategory:
    """A finite category: objects, named morphisms, identity and
    composition tables.  ``comp[(g, f)]`` is the name of ``g . f``."""

    def __init__(self, objects, morphisms, identities, comp, check=True):
        self.objects = list(objects)
        self.morphisms = {m.name: m for m in morphisms}
        if len(self.morphisms) != len(morphisms):
            raise ValueError("duplicate morphism names")
        self.identities = dict(identities)
        self.comp = dict(comp)
        if check:
            self.validate()

    # -- queries ---------------------------------------------------------

    def dom(self, f):
        return self.morphisms[f].dom

    def cod(self, f):
        return self.morphisms[f].cod

    def ident(self, x):
        return self.identities[x]

    def is_identity(self, f):
        return self.identities.get(self.morphisms[f].dom) == f

    def compose(self, g, f):
        """Composite ``g . f`` (apply ``f`` first)."""
        return self.comp[(g, f)]

    def hom(self, x, y):
        return [m.name for m in self.morphisms.values()
                if m.dom == x and m.cod == y]

    def morphism_names(self):
        return list(self.morphisms)

    def is_iso(self, f):
        m = self.morphisms[f]
        for g in self.hom(m.cod, m.dom):
            if (self.compose(g, f) == self.ident(m.dom)
                    and self.compose(f, g) == self.ident(m.cod)):
                return True
        return False

    # -- construction ----------------------------------------------------

    def opposite(self):
        morphs = [Morphism(m.name, m.cod, m.dom) for m in self.morphisms.values()]
        comp = {(f, g): h for (g, f), h in self.comp.items()}
        return FinCategory(self.objects, morphs, self.identities, comp)

    def validate(self):
        for x in self.objects:
            e = self.identities.get(x)
            if e is None or e not in self.morphisms:
                raise ValueError(f"object {x!r} lacks an identity")
            m = self.morphisms[e]
            if m.dom != x or m.cod != x:
                raise ValueError(f"identity of {x!r} is not an endomorphism")
        for m in self.morphisms.values():
            if m.dom not in self.objects or m.cod not in self.objects:
                raise ValueError(f"morphism {m.name!r} has unknown endpoints")
        for g in self.morphisms.values():
            for f in self.morphisms.values():
                if f.cod != g.dom:
                    if (g.name, f.name) in self.comp:
                        raise ValueError(f"composite of non-composable {g.name!r}, {f.name!r}")
                    continue
                h = self.comp.get((g.name, f.name))
                if h is None:
                    raise ValueError(f"missing composite {g.name!r} . {f.name!r}")
                hm = self.morphisms.get(h)
                if hm is None or hm.dom != f.dom or hm.cod != g.cod:
                    raise ValueError(f"composite {g.name!r} . {f.name!r} ill-typed")
        for f in self.morphisms.values():
            if self.compose(f.name, self.ident(f.dom)) != f.name:
                raise ValueError(f"right unit law fails at {f.name!r}")
            if self.compose(self.ident(f.cod), f.name) != f.name:
                raise ValueError(f"left unit law fails at {f.name!r}")
        for h in self.morphisms.values():
            for g in self.morphisms.values():
                if g.cod != h.dom:
                    continue
                for f in self.morphisms.values():
                    if f.cod != g.dom:
                        continue
                    if self.compose(h.name, self.compose(g.name, f.name)) != \
                            self.compose(self.compose(h.name, g.name), f.name):
                        raise ValueError(
                            f"associativity fails at {h.name!r}, {g.name!r}, {f.name!r}")

    @staticmethod
    def from_poset(poset, namer=None):
        """The category with a unique morphism for each related pair."""
        namer = namer or (lambda a, b: f"{a}<={b}")
        objects = list(poset.elements)
        morphs = []
        names = {}
        for a in objects:
            for b in objects:
                if poset.leq(a, b):
                    n = namer(a, b)
                    names[(a, b)] = n
                    morphs.append(Morphism(n, a, b))
        idents = {a: names[(a, a)] for a in objects}
        comp = {}
        for (a, b), f in names.items():
            for (b2, c), g in names.items():
                if b2 == b:
                    comp[(g, f)] = names[(a, c)]
        return FinCategory(objects, morphs, idents, comp)

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"
