"""Integral max-flow (Dinic) and feasible circulation with lower bounds."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Directed network whose arcs carry a lower bound and a capacity.

    Nodes are arbitrary hashables.  ``add_arc`` returns an arc id; after a
    successful ``feasible()`` call ``flow(arc_id)`` reports the flow on it,
    lower bound included.
    """

    def __init__(self):
        self._index = {}
        self._arcs = []     # (u, v, lower, cap)
        self._flows = None

    def node(self, name) -> int:
        if name not in self._index:
            self._index[name] = len(self._index)
        return self._index[name]

    def add_arc(self, u, v, cap: int, lower: int = 0) -> int:
        if lower < 0 or cap < lower:
            raise ValueError(f"bad arc bounds lower={lower} cap={cap}")
        self._arcs.append((self.node(u), self.node(v), lower, cap))
        return len(self._arcs) - 1

    def feasible(self, source=None, sink=None) -> bool:
        """Does a flow meeting every lower bound and capacity exist?

        With ``source``/``sink`` given, an uncapacitated return arc sink->source
        is added, so source/sink may be imbalanced; every other node conserves
        flow.  Uses the usual reduction to one max-flow from a super source.
        """
        n = len(self._index)
        s_star, t_star = n, n + 1
        g = _Dinic(n + 2)
        excess = [0] * n
        handles = []
        for u, v, lo, cap in self._arcs:
            handles.append(g.add_edge(u, v, cap - lo))
            excess[v] += lo
            excess[u] -= lo
        if source is not None and sink is not None:
            g.add_edge(self.node(sink), self.node(source), sum(c for *_, c in self._arcs) + 1)
        need = 0
        for x, e in enumerate(excess):
            if e > 0:
                g.add_edge(s_star, x, e)
                need += e
            elif e < 0:
                g.add_edge(x, t_star, -e)
        ok = g.max_flow(s_star, t_star) == need
        self._flows = [lo + g.flow(h) for (_, _, lo, _), h in zip(self._arcs, handles)] if ok else None
        return ok

    def flow(self, arc: int) -> int:
        if self._flows is None:
            raise RuntimeError("no feasible flow computed")
        return self._flows[arc]


class _Dinic:
    def __init__(self, n: int):
        self.adj = [[] for _ in range(n)]
        # edge: [to, residual cap, index of reverse edge in adj[to]]
        self.edges = []

    def add_edge(self, u: int, v: int, cap: int):
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])
        return (u, len(self.adj[u]) - 1, cap)

    def flow(self, handle) -> int:
        u, j, cap = handle
        return cap - self.adj[u][j][1]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        n = len(self.adj)
        while True:
            level = [-1] * n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v, cap, _ in self.adj[u]:
                    if cap > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return total
            it = [0] * n
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                total += pushed

    def _augment(self, s, t, level, it) -> int:
        # iterative DFS along the level graph; returns bottleneck pushed
        path = []
        u = s
        while True:
            if u == t:
                f = min(self.adj[x][j][1] for x, j in path)
                for x, j in path:
                    e = self.adj[x][j]
                    e[1] -= f
                    self.adj[e[0]][e[2]][1] += f
                return f
            advanced = False
            while it[u] < len(self.adj[u]):
                v, cap, _ = self.adj[u][it[u]]
                if cap > 0 and level[v] == level[u] + 1:
                    path.append((u, it[u]))
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if not path:
                    return 0
                level[u] = -1  # dead end
                u, _ = path.pop()
                it[u] += 1
