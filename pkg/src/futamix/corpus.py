"""Small L programs with divisions and static inputs, used to check that
mix-in-L and the host specializer produce the same residual programs."""

from __future__ import annotations

from functools import lru_cache

from .bta import D, S, analyze
from .guest import asset_w, load_interp_w
from .lang import Program, parse_program
from .mixobj import ConformanceCase
from .values import Seq

POW = """
(program (read b e) init
  ((init ((:= result (quote 1))) (goto test))
   (test () (if (op = (var e) (quote 0)) done body))
   (body ((:= result (op * (var result) (var b)))
          (:= e (op - (var e) (quote 1))))
     (goto test))
   (done () (return (var result)))))
"""

IDENTITY = "(program (read x) init ((init () (return (var x)))))"

APPEND = """
(program (read xs ys) init
  ((init ((:= r (quote ()))) (goto rev))
   (rev () (if (op eq? (var xs) (quote ())) cat rev1))
   (rev1 ((:= r (op cons (op car (var xs)) (var r)))
          (:= xs (op cdr (var xs))))
     (goto rev))
   (cat () (if (op eq? (var r) (quote ())) done cat1))
   (cat1 ((:= ys (op cons (op car (var r)) (var ys)))
          (:= r (op cdr (var r))))
     (goto cat))
   (done () (return (var ys)))))
"""

MEMBER = """
(program (read xs k) loop
  ((loop () (if (op eq? (var xs) (quote ())) no test))
   (test () (if (op eq? (op car (var xs)) (var k)) yes next))
   (next ((:= xs (op cdr (var xs)))) (goto loop))
   (yes () (return (quote true)))
   (no () (return (quote false)))))
"""

LOOKUP = """
(program (read table k) loop
  ((loop () (if (op eq? (var table) (quote ())) miss test))
   (test () (if (op eq? (op car (op car (var table))) (var k)) hit next))
   (next ((:= table (op cdr (var table)))) (goto loop))
   (hit () (return (op car (op cdr (op car (var table))))))
   (miss () (return (quote none)))))
"""

SUMLIST = """
(program (read xs base) init
  ((init ((:= s (quote 0))) (goto loop))
   (loop () (if (op eq? (var xs) (quote ())) done step))
   (step ((:= s (op + (var s) (op car (var xs))))
          (:= xs (op cdr (var xs))))
     (goto loop))
   (done () (return (op + (var s) (var base))))))
"""

MODE = """
(program (read mode x y) init
  ((init () (if (op eq? (var mode) (quote add)) add other))
   (other () (if (op eq? (var mode) (quote mul)) mul neg))
   (add () (return (op + (var x) (var y))))
   (mul () (return (op * (var x) (var y))))
   (neg () (return (op - (quote 0) (var x))))))
"""

FACT = """
(program (read n x) init
  ((init ((:= f (quote 1))) (goto loop))
   (loop () (if (op = (var n) (quote 0)) done step))
   (step ((:= f (op * (var f) (var n)))
          (:= n (op - (var n) (quote 1))))
     (goto loop))
   (done () (return (op cons (var f) (op cons (var x) (quote ())))))))
"""

TOGGLE = """
(program (read n) init
  ((init ((:= flag (quote false)) (:= acc (op - (var n) (var n)))) (goto loop))
   (loop () (if (op < (quote 0) (var n)) step done))
   (step ((:= n (op - (var n) (quote 1)))) (if (var flag) odd even))
   (odd ((:= acc (op + (var acc) (quote 10))) (:= flag (quote false))) (goto loop))
   (even ((:= acc (op + (var acc) (quote 1))) (:= flag (quote true))) (goto loop))
   (done () (return (var acc)))))
"""

CHAIN = """
(program (read x) a
  ((a ((:= k (quote 1))) (goto b))
   (b ((:= k (op + (var k) (var k)))) (goto c))
   (c ((:= k (op + (var k) (quote 3)))) (goto d))
   (d ((:= y (op + (var x) (var k)))) (goto e))
   (e () (return (var y)))))
"""

DEADSTATIC = """
(program (read x) init
  ((init ((:= t (quote 5)) (:= u (quote 7))) (if (op < (var x) (quote 0)) left right))
   (left ((:= x (op - (quote 0) (var x)))) (goto join))
   (right ((:= x (op + (var x) (var t)))) (goto join))
   (join () (if (op < (var x) (quote 100)) small big))
   (small () (return (op * (var x) (var u))))
   (big () (return (var x)))))
"""

TOY = """
(program (read wprog input) loop
  ((loop () (if (op eq? (var wprog) (quote ())) done step))
   (step ((:= input (op + (var input) (op car (var wprog))))
          (:= wprog (op cdr (var wprog))))
     (goto loop))
   (done () (return (var input)))))
"""

RANGE = """
(program (read lo hi x) loop
  ((loop () (if (op < (var lo) (var hi)) test miss))
   (test () (if (op = (var lo) (var x)) hit next))
   (next ((:= lo (op + (var lo) (quote 1)))) (goto loop))
   (hit () (return (var lo)))
   (miss () (return (quote -1)))))
"""


def _p(text: str) -> Program:
    return parse_program(text)


def _case(name, text_or_prog, classes: dict, vs0: dict, grid) -> ConformanceCase:
    p = _p(text_or_prog) if isinstance(text_or_prog, str) else text_or_prog
    return ConformanceCase(name, p, analyze(p, classes), vs0, tuple(tuple(g) for g in grid))


L = Seq.of


@lru_cache(maxsize=1)
def conformance_corpus() -> tuple:
    """The 20 shipped conformance cases."""
    ints = [(b,) for b in range(-3, 8)]
    iw = load_interp_w()
    pw, idw = asset_w("pow.w"), asset_w("identity.w")
    return (
        _case("pow-e2", POW, {"b": D, "e": S}, {"e": 2}, ints),
        _case("pow-e0", POW, {"b": D, "e": S}, {"e": 0}, ints),
        _case("pow-e5", POW, {"b": D, "e": S}, {"e": 5}, ints),
        _case("append-empty", APPEND, {"xs": S, "ys": D}, {"xs": L()}, [(L(),), (L(9),)]),
        _case("pow-dynamic", POW, {"b": D, "e": D}, {}, [(b, e) for b in range(3) for e in range(4)]),
        _case("identity-static", IDENTITY, {"x": S}, {"x": 7}, [()]),
        _case("append", APPEND, {"xs": S, "ys": D}, {"xs": L(1, 2, 3)}, [(L(),), (L(9),), (L(4, 5),)]),
        _case("member", MEMBER, {"xs": S, "k": D}, {"xs": L("a", "b", "c")},
              [("a",), ("b",), ("c",), ("d",), (1,)]),
        _case("lookup", LOOKUP, {"table": S, "k": D},
              {"table": L(L("x", 1), L("y", 2), L("z", 3))}, [("x",), ("z",), ("q",)]),
        _case("sumlist", SUMLIST, {"xs": S, "base": D}, {"xs": L(4, 5, 6)}, ints),
        _case("mode-add", MODE, {"mode": S, "x": D, "y": D}, {"mode": "add"}, [(2, 3), (0, 5)]),
        _case("mode-neg", MODE, {"mode": S, "x": D, "y": D}, {"mode": "neg"}, [(2, 3), (-4, 1)]),
        _case("fact", FACT, {"n": S, "x": D}, {"n": 5}, [(0,), ("a",)]),
        _case("toggle", TOGGLE, {"n": D}, {}, [(n,) for n in range(6)]),
        _case("chain", CHAIN, {"x": D}, {}, ints),
        _case("dead-static", DEADSTATIC, {"x": D}, {}, [(-5,), (0,), (50,), (200,)]),
        _case("toy-interp", TOY, {"wprog": S, "input": D}, {"wprog": L(1, 2, 3)}, ints),
        _case("range", RANGE, {"lo": S, "hi": S, "x": D}, {"lo": 0, "hi": 4}, [(x,) for x in range(-1, 6)]),
        _case("interp-w-identity", iw, {"wprog": S, "input": D}, {"wprog": idw},
              [(L(5),), (L("a"),)]),
        _case("interp-w-pow", iw, {"wprog": S, "input": D}, {"wprog": pw},
              [(L(b, e),) for b in range(4) for e in range(4)]),
    )
