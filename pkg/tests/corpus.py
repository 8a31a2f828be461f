"""Example algebras shared by the chain-law and property tests."""

from frobperf.fpalg import AlgebraPresentation


def algebra(p, base_vars, base_rels, gens, rels, name=None):
    R = AlgebraPresentation(None, base_vars, base_rels, p=p, name="R") if base_vars else None
    return AlgebraPresentation(R, gens, rels, p=p, name=name)


CORPUS = [
    ("etale cubic", (3, ["u"], [], ["x"], ["x^3 - x - u"])),
    ("affine line p=3", (3, [], [], ["x"], [])),
    ("affine line p=5", (5, [], [], ["x"], [])),
    ("node", (3, [], [], ["x", "y"], ["x*y"])),
    ("two points", (5, [], [], ["x", "y"], ["x*y", "x + y - 1"])),
    ("fat point and point", (5, [], [], ["x"], ["x^2*(x - 1)"])),
    ("purely inseparable p=3", (3, ["u"], [], ["x"], ["x^3 - u"])),
    ("purely inseparable p=5", (5, ["u"], [], ["x"], ["x^5 - u"])),
    ("double point", (3, [], [], ["x"], ["x^2"])),
    ("punctured hyperbola", (3, ["u"], [], ["x", "y", "t"], ["x*y - u", "t*(x - y) - 1"])),
    ("crossing base p=3", (3, ["u", "v"], ["u*v"], ["x", "y", "t"], ["x*y - u", "t*(x - y) - 1"])),
    ("crossing base p=5", (5, ["u", "v"], ["u*v"], ["x", "y", "t"], ["x*y - u", "t*(x - y) - 1"])),
]


def corpus_algebras():
    return [(name, algebra(*args)) for name, args in CORPUS]
