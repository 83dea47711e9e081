"""Backtracking search for isomorphisms of finite partial binary structures."""
from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .errors import SearchBudgetExceeded

PartialOp = Callable[[int, int], "int | None"]


class Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded budget of {self.limit} nodes")


def iter_isomorphisms(n: int, op_a: PartialOp, op_b: PartialOp,
                      candidates: Sequence[Sequence[int]],
                      budget: Budget | None = None) -> Iterator[tuple[int, ...]]:
    """Yield injective maps phi on ``range(n)`` with phi(x*y) = phi(x)*phi(y).

    ``op_a(x, y)`` returns None where the product is undefined; wherever it is
    defined, ``op_b`` must be defined on the images.  ``candidates[x]`` lists
    the admissible images of ``x``.  Assignments forced by products are
    propagated before branching again.
    """
    budget = budget or Budget(None)
    allowed = [set(c) for c in candidates]
    phi: list[int | None] = [None] * n
    used: set[int] = set()
    assigned: list[int] = []

    def assign(x, y, trail):
        phi[x] = y
        used.add(y)
        assigned.append(x)
        trail.append(x)

    def undo(trail):
        for x in reversed(trail):
            used.discard(phi[x])
            phi[x] = None
            assigned.pop()

    def propagate(queue, trail) -> bool:
        while queue:
            x = queue.pop()
            for z in list(assigned):
                for a, b in ((x, z), (z, x)):
                    w = op_a(a, b)
                    if w is None:
                        continue
                    v = op_b(phi[a], phi[b])
                    if v is None:
                        return False
                    if phi[w] is None:
                        if v in used or v not in allowed[w]:
                            return False
                        assign(w, v, trail)
                        queue.append(w)
                    elif phi[w] != v:
                        return False
        return True

    def search():
        free = [x for x in range(n) if phi[x] is None]
        if not free:
            yield tuple(phi)
            return
        x = min(free, key=lambda k: len(allowed[k]))
        for y in sorted(allowed[x] - used):
            budget.tick()
            trail: list[int] = []
            assign(x, y, trail)
            if propagate([x], trail):
                yield from search()
            undo(trail)

    if any(not c for c in allowed) and n:
        return
    yield from search()
