"""Named stores of groups, modules, spaces and friends, loaded from one JSON file.

Every entry is validated when the session is loaded; errors name the kind and
the entry.  ``serialize`` writes the canonical form, and loading canonical
text and serializing again gives the same bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..caps import HfpError, InvalidInput, check_order
from ..groups import FiniteGroup, GroupAction
from ..equivariant import GSimplicialSet, extension_from_normal
from ..descent import PrincipalGSet, TorsorData
from ..homalg.chain import ChainComplex, ChainMap
from ..homalg.cohomology import group_cohomology
from ..homalg.modules import GModule
from ..homalg.nonabelian import Cocycle1
from ..localglobal import PlaceFamily
from ..models import bg_model, discrete_model, em_model, p1_model, twisted_model
from ..simplicial.sset import SimplicialSet

# load order: later kinds may refer to earlier ones
KINDS = ("groups", "actions", "modules", "complexes", "maps", "spaces", "models",
         "families", "torsors", "cocycles", "towers")

MODEL_KINDS = ("bg", "em", "twisted", "discrete", "p1")


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class Session:
    entries: dict = field(default_factory=lambda: {k: {} for k in KINDS})
    notes: dict = field(default_factory=dict)       # (kind, name) -> text

    def kind_of(self, name: str) -> str | None:
        for k in KINDS:
            if name in self.entries[k]:
                return k
        return None

    def get(self, kind: str, name: str):
        try:
            return self.entries[kind][name]
        except KeyError:
            raise InvalidInput(f"no {kind[:-1]} named {name!r} in the session") from None

    def add(self, kind: str, name: str, obj, note: str | None = None) -> None:
        if kind not in KINDS:
            raise InvalidInput(f"unknown session kind {kind!r}")
        other = self.kind_of(name)
        if other is not None:
            raise InvalidInput(f"name {name!r} is used twice ({other} and {kind})")
        self.entries[kind][name] = obj
        if note is not None:
            self.notes[(kind, name)] = note

    def target(self, name: str):
        """(G-space, model metadata or None) for a model or an explicit G-space."""
        kind = self.kind_of(name)
        if kind == "models":
            return self.entries["models"][name]["built"]
        if kind == "spaces":
            X = self.entries["spaces"][name]
            if not isinstance(X, GSimplicialSet):
                raise InvalidInput(f"space {name!r} carries no group action")
            return X, None
        raise InvalidInput(f"no model or G-space named {name!r} in the session")

    def space(self, name: str) -> SimplicialSet:
        kind = self.kind_of(name)
        if kind == "spaces":
            X = self.entries["spaces"][name]
        elif kind == "models":
            X = self.entries["models"][name]["built"][0]
        else:
            raise InvalidInput(f"no simplicial set named {name!r} in the session")
        return X.space if isinstance(X, GSimplicialSet) else X


# ----------------------------------------------------------------------
# decoding
# ----------------------------------------------------------------------

def _ref(s: Session, kind: str, d: dict, key: str, where: str):
    if key not in d:
        raise InvalidInput(f"{where}: missing field {key!r}")
    name = d[key]
    if not isinstance(name, str) or name not in s.entries[kind]:
        raise InvalidInput(f"{where}: unresolved {kind[:-1]} reference {name!r}")
    return s.entries[kind][name]


def _labels_to_index(G: FiniteGroup, labs, where: str) -> list:
    out = []
    for l in labs:
        try:
            out.append(G.index(l))
        except (KeyError, ValueError, InvalidInput):
            raise InvalidInput(f"{where}: {l!r} is not an element of {G.name}") from None
    return out


def _decode_group(s, name, d):
    G = FiniteGroup.from_json(d, name=name)
    check_order(G.order, f"group {name!r}")
    return G


def _decode_action(s, name, d):
    where = f"action {name!r}"
    G = _ref(s, "groups", d, "group", where)
    A = _ref(s, "groups", d, "on", where)
    imgs = d.get("images", {})
    rows = []
    for g in G.elements:
        lab = G.labels[g]
        if lab not in imgs:
            raise InvalidInput(f"{where}: no images for {lab!r}")
        rows.append(_labels_to_index(A, imgs[lab], where))
    try:
        return GroupAction(G, A, rows)
    except InvalidInput as exc:
        raise InvalidInput(f"{where}: {exc}") from None


def _decode_module(s, name, d):
    G = _ref(s, "groups", d, "group", f"module {name!r}")
    body = {k: v for k, v in d.items() if k != "group"}
    return GModule.from_json(G, body, name=name)


def _decode_complex(s, name, d):
    G = _ref(s, "groups", d, "group", f"complex {name!r}") if "group" in d else None
    body = {k: v for k, v in d.items() if k != "group"}
    return ChainComplex.from_json(body, group=G, name=name)


def _decode_map(s, name, d):
    where = f"map {name!r}"
    A = _ref(s, "complexes", d, "src", where)
    B = _ref(s, "complexes", d, "tgt", where)
    comps = {}
    for k, mat in d.get("components", {}).items():
        try:
            comps[int(k)] = mat
        except ValueError:
            raise InvalidInput(f"{where}: degree {k!r} is not an integer") from None
    try:
        return ChainMap(A, B, comps)
    except InvalidInput as exc:
        raise InvalidInput(f"{where}: {exc}") from None


def _decode_space(s, name, d):
    if "group" not in d:
        return SimplicialSet.from_json(d, name=name)
    G = _ref(s, "groups", d, "group", f"space {name!r}")
    body = dict(d)
    body["group"] = G.to_json()
    try:
        return GSimplicialSet.from_json(body, name=name)
    except InvalidInput as exc:
        raise InvalidInput(f"space {name!r}: {exc}") from None


def _decode_model(s, name, d):
    where = f"model {name!r}"
    kind = d.get("kind")
    if kind not in MODEL_KINDS:
        raise InvalidInput(f"{where}: kind must be one of {', '.join(MODEL_KINDS)}")
    dim = d.get("dim")
    if kind == "bg":
        built = bg_model(_ref(s, "actions", d, "action", where), dim or 3)
    elif kind == "em":
        M = _ref(s, "modules", d, "module", where)
        built = em_model(M, int(d["degree"]), dim)
    elif kind == "twisted":
        Pi = _ref(s, "groups", d, "pi", where)
        M = _ref(s, "modules", d, "module", where)
        G = _ref(s, "groups", d, "group", where)
        if M.G.table != Pi.table:
            raise InvalidInput(f"{where}: the module must be over the group named by 'pi'")
        H3 = group_cohomology(Pi, M, 3)
        coords = d.get("kappa", [0] * len(H3.reps))
        if len(coords) != len(H3.reps):
            raise InvalidInput(f"{where}: kappa needs {len(H3.reps)} coordinates")
        built = twisted_model(Pi, M, H3.sq.element(coords), G, dim or 4)
    elif kind == "discrete":
        G = _ref(s, "groups", d, "group", where)
        perms = d.get("perms", {})
        try:
            rows = [perms[G.labels[g]] for g in G.elements]
        except KeyError as exc:
            raise InvalidInput(f"{where}: no permutation for {exc}") from None
        built = discrete_model(G, rows, dim or 2)
    else:
        T = _ref(s, "groups", d, "group", where)
        K = _labels_to_index(T, d.get("normal", []), where)
        built = p1_model(extension_from_normal(T, K), dim or 2)
    return {"descriptor": d, "built": built}


def _decode_family(s, name, d):
    G = _ref(s, "groups", d, "group", f"family {name!r}")
    try:
        F = PlaceFamily.from_json(d, G)
        F.validate()
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"family {name!r}: malformed field {exc}") from None
    except InvalidInput as exc:
        raise InvalidInput(f"family {name!r}: {exc}") from None
    return F


def _decode_torsor(s, name, d):
    where = f"torsor {name!r}"
    G = _ref(s, "groups", d, "group", where)
    Ga = _ref(s, "groups", d, "galois", where)
    try:
        T = TorsorData.from_json(d, G, Ga)
        if len(T.components) == G.order:
            T = PrincipalGSet(T.components, T.g_action, T.gal_set, T.gal_group)
        T.validate()
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"{where}: malformed field {exc}") from None
    except InvalidInput as exc:
        raise InvalidInput(f"{where}: {exc}") from None
    return T


def _decode_cocycle(s, name, d):
    where = f"cocycle {name!r}"
    act = _ref(s, "actions", d, "action", where)
    vals = d.get("values", {})
    try:
        row = [vals[act.G.labels[g]] for g in act.G.elements]
    except KeyError as exc:
        raise InvalidInput(f"{where}: no value for {exc}") from None
    try:
        return Cocycle1(act, _labels_to_index(act.A, row, where))
    except InvalidInput as exc:
        raise InvalidInput(f"{where}: {exc}") from None


def _decode_tower(s, name, d):
    where = f"tower {name!r}"
    sizes = d.get("sizes")
    maps = d.get("maps", [])
    if not isinstance(sizes, list) or not all(isinstance(k, int) and k >= 0 for k in sizes):
        raise InvalidInput(f"{where}: sizes must be a list of nonnegative integers")
    if len(maps) != max(len(sizes) - 1, 0):
        raise InvalidInput(f"{where}: needs one map per consecutive pair of levels")
    for k, m in enumerate(maps):
        if len(m) != sizes[k + 1] or any(not 0 <= y < sizes[k] for y in m):
            raise InvalidInput(f"{where}: map {k} is not a function from level {k + 1} to level {k}")
    return {"sizes": list(sizes), "maps": [list(m) for m in maps]}


_DECODERS = {"groups": _decode_group, "actions": _decode_action, "modules": _decode_module,
             "complexes": _decode_complex, "maps": _decode_map, "spaces": _decode_space,
             "models": _decode_model, "families": _decode_family, "torsors": _decode_torsor,
             "cocycles": _decode_cocycle, "towers": _decode_tower}


def session_from_dict(data: dict) -> Session:
    if not isinstance(data, dict):
        raise InvalidInput("session file must hold a JSON object")
    extra = sorted(set(data) - set(KINDS))
    if extra:
        raise InvalidInput(f"unknown session sections: {', '.join(extra)}")
    s = Session()
    for kind in KINDS:
        section = data.get(kind, {})
        if not isinstance(section, dict):
            raise InvalidInput(f"section {kind!r} must map names to entries")
        for name in sorted(section):
            d = section[name]
            if not isinstance(d, dict):
                raise InvalidInput(f"{kind[:-1]} {name!r} must be a JSON object")
            note = d.get("note")
            body = {k: v for k, v in d.items() if k != "note"}
            try:
                obj = _DECODERS[kind](s, name, body)
            except InvalidInput as exc:
                if repr(name) in str(exc):
                    raise
                raise InvalidInput(f"{kind[:-1]} {name!r}: {exc}") from None
            except HfpError:
                raise
            except (KeyError, TypeError, ValueError, IndexError) as exc:
                raise InvalidInput(f"{kind[:-1]} {name!r}: malformed ({exc!r})") from None
            s.add(kind, name, obj, note)
    return s


def load_session(path) -> Session:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read session {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"session {path} is not valid JSON: {exc}") from None
    return session_from_dict(data)


# ----------------------------------------------------------------------
# encoding
# ----------------------------------------------------------------------

def _name_of(s: Session, kind: str, obj) -> str:
    for name, o in s.entries[kind].items():
        if o is obj:
            return name
    for name, o in s.entries[kind].items():
        if getattr(o, "table", None) is not None and o.table == getattr(obj, "table", None):
            return name
    raise InvalidInput(f"object is not registered among the session {kind}")


def _encode(s: Session, kind: str, obj) -> dict:
    if kind == "groups":
        return obj.to_json()
    if kind == "actions":
        G, A = obj.G, obj.A
        return {"group": _name_of(s, "groups", G), "on": _name_of(s, "groups", A),
                "images": {G.labels[g]: [A.labels[a] for a in obj.images[g]] for g in G.elements}}
    if kind == "modules":
        return {"group": _name_of(s, "groups", obj.G), **obj.to_json()}
    if kind == "complexes":
        d = obj.to_json()
        if obj.group is not None:
            d["group"] = _name_of(s, "groups", obj.group)
        return d
    if kind == "maps":
        return {"src": _name_of(s, "complexes", obj.src), "tgt": _name_of(s, "complexes", obj.tgt),
                "components": {str(n): [[int(v) for v in row] for row in obj.maps[n]]
                               for n in sorted(obj.maps) if obj.maps[n].size}}
    if kind == "spaces":
        d = obj.to_json()
        if isinstance(obj, GSimplicialSet):
            d["group"] = _name_of(s, "groups", obj.group)
        return d
    if kind == "models":
        return dict(obj["descriptor"])
    if kind == "families":
        d = obj.to_json()
        d["group"] = _name_of(s, "groups", obj.group)
        return d
    if kind == "torsors":
        d = obj.to_json()
        d["group"] = _name_of(s, "groups", obj.G)
        d["galois"] = _name_of(s, "groups", obj.galois)
        return d
    if kind == "cocycles":
        return {"action": _name_of(s, "actions", obj.action), "values": obj.to_json()}
    if kind == "towers":
        return {"sizes": obj["sizes"], "maps": obj["maps"]}
    raise InvalidInput(f"unknown session kind {kind!r}")


def session_to_dict(s: Session) -> dict:
    out = {}
    for kind in KINDS:
        if not s.entries[kind]:
            continue
        sec = {}
        for name in sorted(s.entries[kind]):
            d = _encode(s, kind, s.entries[kind][name])
            note = s.notes.get((kind, name))
            if note is not None:
                d["note"] = note
            sec[name] = d
        out[kind] = sec
    return out


def serialize(s: Session) -> str:
    return canonical(session_to_dict(s))


def save_session(s: Session, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(s))
