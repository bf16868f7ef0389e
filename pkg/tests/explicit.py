"""Hand-written finite truncations of the builtin rank-0 graphs, with plain BFS."""

from collections import deque

from nsgraph.graphzero import NodeRef


def x(k):
    return NodeRef("x", (k,))


def p(k, l):
    return NodeRef("p", (k, l))


def _link(adj, a, b):
    adj.setdefault(a, set()).add(b)
    adj.setdefault(b, set()).add(a)


def path_adj(lo, hi):
    adj = {x(k): set() for k in range(lo, hi + 1)}
    for k in range(lo, hi):
        _link(adj, x(k), x(k + 1))
    return adj


def ladder_adj(rungs, tail=0):
    adj = path_adj(0, rungs)
    g = NodeRef("x_g")
    for k in range(rungs + 1):
        _link(adj, g, x(k))
    if tail:
        t = lambda i: NodeRef("t", (i,))
        _link(adj, g, t(0))
        for i in range(tail):
            _link(adj, t(i), t(i + 1))
    return adj


def grid_adj(radius, adds=(), deletes=()):
    adj = {}
    for k in range(-radius, radius + 1):
        for l in range(-radius, radius + 1):
            adj.setdefault(p(k, l), set())
            if k < radius:
                _link(adj, p(k, l), p(k + 1, l))
            if l < radius:
                _link(adj, p(k, l), p(k, l + 1))
    for a, b in deletes:
        adj[a].discard(b)
        adj[b].discard(a)
    for a, b in adds:
        _link(adj, a, b)
    return adj


def bfs(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist
