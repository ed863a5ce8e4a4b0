"""Explicit finite graphs: reachability, strongly connected components, paths."""
from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable, TypeVar

N = TypeVar("N", bound=Hashable)
E = TypeVar("E")


def explore(start: N, successors: Callable[[N], Iterable[tuple[E, N]]]) -> dict[N, list[tuple[E, N]]]:
    """Breadth-first closure from ``start``; maps every reachable node to its
    labelled out-edges in generation order."""
    graph: dict[N, list[tuple[E, N]]] = {}
    queue = deque([start])
    graph[start] = []
    while queue:
        node = queue.popleft()
        edges = list(successors(node))
        graph[node] = edges
        for _, nxt in edges:
            if nxt not in graph:
                graph[nxt] = []
                queue.append(nxt)
    return graph


def strongly_connected_components(graph: dict[N, list[tuple[E, N]]]) -> list[list[N]]:
    """Tarjan's algorithm without recursion.  Components come out in reverse
    topological order; node order inside a component follows discovery."""
    index: dict[N, int] = {}
    low: dict[N, int] = {}
    on_stack: set[N] = set()
    stack: list[N] = []
    result: list[list[N]] = []
    counter = 0

    for root in graph:
        if root in index:
            continue
        work = [(root, iter(graph[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for _, nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(graph[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                comp.reverse()
                result.append(comp)
    return result


def shortest_path(
    graph: dict[N, list[tuple[E, N]]],
    source: N,
    target: N,
    allowed: set[N] | None = None,
) -> list[tuple[E, N]] | None:
    """Edges of a shortest path ``source -> target`` (empty if equal),
    optionally confined to ``allowed`` nodes."""
    if source == target:
        return []
    back: dict[N, tuple[N, E]] = {}
    seen = {source}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for label, nxt in graph[node]:
            if nxt in seen or (allowed is not None and nxt not in allowed):
                continue
            seen.add(nxt)
            back[nxt] = (node, label)
            if nxt == target:
                path = []
                cur = nxt
                while cur != source:
                    prev, lab = back[cur]
                    path.append((lab, cur))
                    cur = prev
                path.reverse()
                return path
            queue.append(nxt)
    return None
