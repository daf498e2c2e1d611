"""Half-edge multigraphs with orientations.

An oriented graph is stored as a vertex count plus an ordered tuple of
directed edges (tail, head).  The orientation is the identity vertex order
together with the stored edge directions; any transformation that would
negate the orientation is returned as an explicit sign instead, so chains
can fold it into coefficients.

Canonical labels: among all vertex labelings that sort degrees in
non-increasing order, we take the one maximizing the sequence of adjacency
columns read in placement order.  The choice of tie-breaking is arbitrary
but fixed; all downstream quantities transform by the recorded sign.
"""

from itertools import permutations as _perms

__all__ = [
    "OrientedGraph", "CanonicalKey", "parse_adjacency", "serialize_adjacency",
    "parse_graph_file", "canonical_key", "canonical_info", "automorphisms",
    "contract_edge", "subgraph_quotient", "oriented_cycle_basis",
    "whitney_flip", "enumerate_graphs", "dipole", "theta", "k4", "t122",
    "prism", "is_connected", "loop_number", "gc_degree", "has_bridge",
    "has_two_edge_cut", "cut_vertices", "perm_sign",
]

ENUM_MAX_VERTICES = 10
ENUM_MAX_EDGES = 16
AUTOMORPHISM_CAP = 10 ** 6


def perm_sign(perm):
    """Sign of a permutation given as a sequence of images."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


class OrientedGraph:
    """Multigraph with n vertices and ordered directed edges (tail, head)."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges):
        edges = tuple((int(t), int(h)) for t, h in edges)
        for t, h in edges:
            if not (0 <= t < n and 0 <= h < n):
                raise ValueError(f"edge ({t},{h}) outside {n} vertices")
        self.n = n
        self.edges = edges

    @property
    def m(self):
        return len(self.edges)

    def __eq__(self, other):
        return (isinstance(other, OrientedGraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"OrientedGraph({self.n}, {serialize_adjacency(self)!r})"

    def degrees(self):
        d = [0] * self.n
        for t, h in self.edges:
            d[t] += 1
            d[h] += 1
        return d

    def multiplicity(self):
        """Symmetric matrix of edge multiplicities; diagonal counts self-loops."""
        m = [[0] * self.n for _ in range(self.n)]
        for t, h in self.edges:
            if t == h:
                m[t][t] += 1
            else:
                m[t][h] += 1
                m[h][t] += 1
        return m

    def has_self_loop(self):
        return any(t == h for t, h in self.edges)

    def reverse_edge(self, i):
        edges = list(self.edges)
        t, h = edges[i]
        edges[i] = (h, t)
        return OrientedGraph(self.n, edges)


def is_connected(g):
    if g.n == 0:
        return True
    adj = [[] for _ in range(g.n)]
    for t, h in g.edges:
        adj[t].append(h)
        adj[h].append(t)
    seen = [False] * g.n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def component_count(g):
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for t, h in g.edges:
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rt] = rh
            comps -= 1
    return comps


def loop_number(g):
    return g.m - g.n + component_count(g)


def gc_degree(g):
    return g.m - 3 * loop_number(g)


# ---------------------------------------------------------------------------
# adjacency-list text format: blocks "B0|B1|...|Bn-1", block i holding one
# digit per edge whose tail is vertex i (the digit is the head vertex).

def parse_adjacency(text):
    text = text.strip()
    blocks = text.split("|")
    n = len(blocks)
    if n == 0 or n > 10:
        raise ValueError(f"bad adjacency string {text!r}")
    edges = []
    for tail, block in enumerate(blocks):
        for ch in block:
            if not ch.isdigit():
                raise ValueError(f"bad character {ch!r} in {text!r}")
            head = int(ch)
            if head >= n:
                raise ValueError(f"target {head} out of range in {text!r}")
            edges.append((tail, head))
    return OrientedGraph(n, edges)


def serialize_adjacency(g):
    if g.n > 10:
        raise ValueError("adjacency format limited to 10 vertices")
    blocks = [""] * g.n
    for t, h in g.edges:
        blocks[t] += str(h)
    return "|".join(blocks)


def parse_graph_file(text):
    """Parse a graphs file: one adjacency string per line, '#' comments,
    optional 'name:' prefixes.  Returns a list of (name, OrientedGraph)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name = None
        if ":" in line:
            name, line = (part.strip() for part in line.split(":", 1))
        try:
            g = parse_adjacency(line)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        out.append((name, g))
    return out


# ---------------------------------------------------------------------------
# canonical labeling

class CanonicalKey:
    """Isomorphism class of an unoriented multigraph, with a fixed reference
    orientation (identity vertex order; every edge directed low -> high,
    parallel copies consecutive)."""

    __slots__ = ("n", "tri", "_hash")

    def __init__(self, n, tri):
        self.n = n
        self.tri = tri  # row-major upper triangle incl. diagonal self-loops
        self._hash = hash((n, tri))

    def __eq__(self, other):
        return (isinstance(other, CanonicalKey)
                and self.n == other.n and self.tri == other.tri)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.n, len(self.tri), self.tri) < (other.n, len(other.tri), other.tri)

    def matrix(self):
        m = [[0] * self.n for _ in range(self.n)]
        k = 0
        for i in range(self.n):
            for j in range(i, self.n):
                m[i][j] = m[j][i] = self.tri[k]
                k += 1
        return m

    def graph(self):
        """The reference oriented representative."""
        mult = self.matrix()
        edges = []
        for i in range(self.n):
            if mult[i][i]:
                edges.extend([(i, i)] * mult[i][i])
            for j in range(i + 1, self.n):
                edges.extend([(i, j)] * mult[i][j])
        return OrientedGraph(self.n, edges)

    @property
    def m(self):
        total = 0
        k = 0
        for i in range(self.n):
            for j in range(i, self.n):
                total += self.tri[k]
                k += 1
        return total

    def __repr__(self):
        return f"<key {serialize_adjacency(self.graph())}>"


def _triangle(mult, n):
    return tuple(mult[i][j] for i in range(n) for j in range(i, n))


def _canonical_search(n, mult, degs):
    """Maximize the placement-order column sequence over degree-sorted
    labelings.  Returns (best placements, ...) where each placement is a
    tuple `placed` with placed[p] = original vertex at canonical position p.
    """
    target = sorted(degs, reverse=True)
    best_seq = [None]
    best_placed = []

    placed = []
    used = [False] * n
    seq = []

    def rec(p, above):
        # above: True once seq is strictly above best_seq's prefix
        if p == n:
            if best_seq[0] is None or seq > best_seq[0]:
                best_seq[0] = list(seq)
                best_placed.clear()
                best_placed.append(tuple(placed))
            elif seq == best_seq[0]:
                best_placed.append(tuple(placed))
            return
        want = target[p]
        cands = []
        for v in range(n):
            if not used[v] and degs[v] == want:
                emit = [mult[v][v]] + [mult[u][v] for u in placed]
                cands.append((emit, v))
        cands.sort(key=lambda t: t[0], reverse=True)
        base = len(seq)
        for emit, v in cands:
            child_above = above
            if not above and best_seq[0] is not None:
                ref = best_seq[0][base:base + len(emit)]
                if emit < ref:
                    continue
                if emit > ref:
                    child_above = True
            seq.extend(emit)
            placed.append(v)
            used[v] = True
            rec(p + 1, child_above)
            used[v] = False
            placed.pop()
            del seq[base:]

    rec(0, False)
    return best_placed


class CanonicalInfo:
    __slots__ = ("key", "aut_v", "odd", "kernel_order", "aut_order")

    def __init__(self, key, aut_v, odd, kernel_order):
        self.key = key
        self.aut_v = aut_v            # vertex automorphisms of key.matrix()
        self.odd = odd                # admits an orientation-reversing automorphism
        self.kernel_order = kernel_order
        self.aut_order = kernel_order * len(aut_v)


_info_cache = {}
_label_cache = {}


def clear_caches():
    _info_cache.clear()
    _label_cache.clear()


def _vertex_aut_sign(tau, cmult, n, has_loop):
    """Orientation sign of the automorphism induced by vertex permutation tau
    on the reference orientation (all edges directed low->high)."""
    if has_loop:
        return -1  # a self-loop half-edge swap is always available and odd
    sign = perm_sign(tau)
    for i in range(n):
        ti = tau[i]
        row = cmult[i]
        for j in range(i + 1, n):
            if row[j] and ti > tau[j] and row[j] % 2:
                sign = -sign
    return sign


def _info_for(n, mult, degs):
    tri_in = _triangle(mult, n)
    cached = _label_cache.get((n, tri_in))
    if cached is not None:
        return cached
    placements = _canonical_search(n, mult, degs)
    placed0 = placements[0]
    sigma0 = [0] * n
    for pos, v in enumerate(placed0):
        sigma0[v] = pos
    cmult = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cmult[sigma0[i]][sigma0[j]] = mult[i][j]
    tri = _triangle(cmult, n)
    key = CanonicalKey(n, tri)
    info = _info_cache.get(key)
    if info is None:
        # automorphisms of the canonical matrix from the tying placements
        aut_v = []
        for placed in placements:
            sig = [0] * n
            for pos, v in enumerate(placed):
                sig[v] = pos
            tau = tuple(sig[placed0[pos2]] for pos2 in range(n))
            # tau maps canonical position p (vertex placed0[p]) to sig of it
            aut_v.append(tau)
        has_loop = any(cmult[i][i] for i in range(n))
        odd = any(_vertex_aut_sign(tau, cmult, n, has_loop) < 0 for tau in aut_v)
        kernel = 1
        for i in range(n):
            for j in range(i + 1, n):
                for t in range(2, cmult[i][j] + 1):
                    kernel *= t
            d = cmult[i][i]
            if d:
                kernel *= 2 ** d
                for t in range(2, d + 1):
                    kernel *= t
        info = CanonicalInfo(key, aut_v, odd, kernel)
        _info_cache[key] = info
    result = (info, tuple(sigma0))
    _label_cache[(n, tri_in)] = result
    return result


def canonical_info(g):
    """CanonicalInfo of the underlying unoriented multigraph."""
    mult = g.multiplicity()
    info, _ = _info_for(g.n, mult, g.degrees())
    return info


def canonical_key(g):
    """Canonical key of g plus the orientation sign of g against the key's
    reference orientation; sign 0 when the class has an odd automorphism."""
    mult = g.multiplicity()
    info, sigma = _info_for(g.n, mult, g.degrees())
    if info.odd:
        return info.key, 0
    sign = perm_sign(sigma)
    for t, h in g.edges:
        if sigma[t] > sigma[h]:
            sign = -sign
    return info.key, sign


def key_of(g):
    return canonical_key(g)[0]


# ---------------------------------------------------------------------------
# automorphisms as explicit half-edge permutations

def automorphisms(g, cap=AUTOMORPHISM_CAP):
    """All automorphisms of the half-edge graph, each as (half_edge_map, sign).

    Half-edge 2*i is the tail end of edge i and 2*i+1 its head end.  The
    sign is the induced action on det Z^V tensor the edge direction lines.
    """
    info = canonical_info(g)
    if info.aut_order > cap:
        raise ResourceWarning(
            f"automorphism group of order {info.aut_order} exceeds cap {cap}")
    mult = g.multiplicity()
    _, sigma = _info_for(g.n, mult, g.degrees())
    inv_sigma = [0] * g.n
    for v, p in enumerate(sigma):
        inv_sigma[p] = v
    # vertex automorphisms of g itself: sigma^-1 . tau . sigma
    vertex_auts = []
    for tau in info.aut_v:
        vertex_auts.append(tuple(inv_sigma[tau[sigma[v]]] for v in range(g.n)))

    # group edges into parallel classes (unordered endpoints)
    classes = {}
    for i, (t, h) in enumerate(g.edges):
        classes.setdefault((min(t, h), max(t, h)), []).append(i)

    out = []
    for pi in vertex_auts:
        vsign = perm_sign(pi)
        # image class of each class
        image = {}
        ok = True
        for (a, b), idxs in classes.items():
            ia, ib = pi[a], pi[b]
            tgt = classes.get((min(ia, ib), max(ia, ib)))
            if tgt is None or len(tgt) != len(idxs):
                ok = False
                break
            image[(a, b)] = tgt
        if not ok:
            continue  # cannot happen for true automorphisms
        # enumerate assignments within parallel classes, plus loop flips
        class_list = sorted(classes)
        slots = []
        for cl in class_list:
            idxs = classes[cl]
            tgt = image[cl]
            is_loop = cl[0] == cl[1]
            opts = []
            for assign in _perms(tgt):
                if is_loop:
                    for flips in _bitstrings(len(idxs)):
                        opts.append((assign, flips))
                else:
                    opts.append((assign, None))
            slots.append((idxs, opts))
        for combo in _product_capped(slots, cap - len(out)):
            hmap = [0] * (2 * g.m)
            sign = vsign
            for (idxs, _), (assign, flips) in zip(slots, combo):
                for local, src in enumerate(idxs):
                    dst = assign[local]
                    st, sh = g.edges[src]
                    dt, dh = g.edges[dst]
                    flipped = flips[local] if flips is not None else False
                    it, ih = pi[st], pi[sh]
                    if st == sh:  # self-loop
                        if flipped:
                            hmap[2 * src] = 2 * dst + 1
                            hmap[2 * src + 1] = 2 * dst
                            sign = -sign
                        else:
                            hmap[2 * src] = 2 * dst
                            hmap[2 * src + 1] = 2 * dst + 1
                    else:
                        if (it, ih) == (dt, dh):
                            hmap[2 * src] = 2 * dst
                            hmap[2 * src + 1] = 2 * dst + 1
                        else:  # image reverses the stored direction
                            hmap[2 * src] = 2 * dst + 1
                            hmap[2 * src + 1] = 2 * dst
                            sign = -sign
            out.append((tuple(hmap), sign))
            if len(out) > cap:
                raise ResourceWarning(f"more than {cap} automorphisms")
    return out


def _bitstrings(k):
    for mask in range(1 << k):
        yield tuple(bool(mask >> i & 1) for i in range(k))


def _product_capped(slots, cap):
    if cap <= 0:
        raise ResourceWarning("automorphism cap exhausted")

    def rec(i, acc):
        if i == len(slots):
            yield tuple(acc)
            return
        for opt in slots[i][1]:
            acc.append(opt)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# oriented operations

def _move_to_front_sign(n, first, second):
    """Sign of reordering (0..n-1) as (first, second, rest in order)."""
    arrangement = [first, second] + [v for v in range(n) if v not in (first, second)]
    return perm_sign(_inverse(arrangement))


def _inverse(arrangement):
    inv = [0] * len(arrangement)
    for pos, v in enumerate(arrangement):
        inv[v] = pos
    return inv


def contract_edge(g, i):
    """Contract edge i (not a self-loop). Returns (graph, sign): the oriented
    quotient equals sign times the returned representative."""
    t, h = g.edges[i]
    if t == h:
        raise ValueError("cannot contract a self-loop")
    sign = _move_to_front_sign(g.n, t, h)
    relabel = {}
    relabel[t] = 0
    relabel[h] = 0
    nxt = 1
    for v in range(g.n):
        if v != t and v != h:
            relabel[v] = nxt
            nxt += 1
    edges = [(relabel[a], relabel[b]) for j, (a, b) in enumerate(g.edges) if j != i]
    return OrientedGraph(g.n - 1, edges), sign


def subgraph_quotient(g, edge_subset):
    """Split g along a subgraph: returns (gamma, quotient, sign) with
    sign * (gamma tensor quotient) the canonical pair of section 'G/gamma'.

    gamma keeps its vertices in increasing original order; the quotient has
    the merged vertex first.  The sign accounts for moving gamma's vertices
    to the front of the vertex order.
    """
    edge_subset = sorted(set(edge_subset))
    if not edge_subset or len(edge_subset) >= g.m:
        raise ValueError("subgraph must be a proper non-empty edge subset")
    sub_vertices = sorted({v for i in edge_subset for v in g.edges[i]})
    rest = [v for v in range(g.n) if v not in sub_vertices]
    arrangement = sub_vertices + rest
    sign = perm_sign(_inverse(arrangement))

    gamma_label = {v: i for i, v in enumerate(sub_vertices)}
    gamma = OrientedGraph(len(sub_vertices),
                          [(gamma_label[g.edges[i][0]], gamma_label[g.edges[i][1]])
                           for i in edge_subset])

    quot_label = {}
    for v in sub_vertices:
        quot_label[v] = 0
    for i, v in enumerate(rest):
        quot_label[v] = i + 1
    chosen = set(edge_subset)
    quot = OrientedGraph(len(rest) + 1,
                         [(quot_label[a], quot_label[b])
                          for j, (a, b) in enumerate(g.edges) if j not in chosen])
    return gamma, quot, sign


def oriented_cycle_basis(g):
    """Integer m x loops cycle matrix C with certificate det(C | paths) = +1.

    The spanning tree is built scanning edges in reverse order, matching the
    usual dipole convention where the last edge carries the tree path.
    """
    if not is_connected(g):
        raise ValueError("cycle basis requires a connected graph")
    n, m = g.n, g.m
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    in_tree = [False] * m
    for i in range(m - 1, -1, -1):
        t, h = g.edges[i]
        if t == h:
            continue
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rt] = rh
            in_tree[i] = True
            tree.append(i)
    # adjacency restricted to the tree
    adj = [[] for _ in range(n)]
    for i in tree:
        t, h = g.edges[i]
        adj[t].append((h, i, 1))
        adj[h].append((t, i, -1))
    # tree paths from vertex 0: path_vec[v] in Z^m with boundary v - 0
    path = [None] * n
    path[0] = {}
    stack = [0]
    while stack:
        v = stack.pop()
        for w, i, orient in adj[v]:
            if path[w] is None:
                p = dict(path[v])
                p[i] = p.get(i, 0) + orient
                if not p[i]:
                    del p[i]
                path[w] = p
                stack.append(w)
    loops = m - n + 1
    cols = []
    for i in range(m):
        if in_tree[i]:
            continue
        t, h = g.edges[i]
        vec = {i: 1}
        if t != h:
            # close up: edge goes t->h, return along tree path h->t
            for j, c in path[t].items():
                vec[j] = vec.get(j, 0) + c
                if not vec[j]:
                    del vec[j]
            for j, c in path[h].items():
                vec[j] = vec.get(j, 0) - c
                if not vec[j]:
                    del vec[j]
        cols.append(vec)
    assert len(cols) == loops
    full = [[0] * m for _ in range(m)]
    for c, vec in enumerate(cols):
        for r, val in vec.items():
            full[r][c] = val
    for idx in range(1, n):
        for r, val in path[idx].items():
            full[r][loops + idx - 1] = val
    det = _int_det(full)
    if det == -1:
        if loops == 0:
            raise ValueError("tree orientation not representable by a cycle basis")
        for vec in (cols[0],):
            for r in list(vec):
                vec[r] = -vec[r]
        det = 1
    if det != 1:
        raise AssertionError(f"cycle basis certificate failed: det={det}")
    C = [[0] * loops for _ in range(m)]
    for c, vec in enumerate(cols):
        for r, val in vec.items():
            C[r][c] = val
    return C


def _int_det(mat):
    """Exact integer determinant (fraction-free Gaussian elimination)."""
    n = len(mat)
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def cycle_space_contains(g, column):
    """Check a single integer edge vector lies in the cycle space of g."""
    bound = {}
    for i, c in enumerate(column):
        if c:
            t, h = g.edges[i]
            bound[h] = bound.get(h, 0) + c
            bound[t] = bound.get(t, 0) - c
    return all(v == 0 for v in bound.values())


def whitney_flip(g, cut):
    """Whitney flip along cut = ((v, w), edge_subset_of_G2).

    Returns (flipped graph, sign) where the oriented flip equals
    sign * (returned graph with the same vertex order and edge directions).
    """
    (v, w), side = cut
    side = set(side)
    if not side or len(side) >= g.m:
        raise ValueError("flip side must be a proper non-empty edge subset")
    side_vertices = {x for i in side for x in g.edges[i]}
    other_vertices = {x for i in range(g.m) if i not in side for x in g.edges[i]}
    meet = side_vertices & other_vertices
    if meet != {v, w}:
        raise ValueError(f"cut vertices {sorted(meet)} do not match ({v},{w})")
    swap = {v: w, w: v}
    edges = list(g.edges)
    for i in side:
        t, h = edges[i]
        edges[i] = (swap.get(t, t), swap.get(h, h))
    g2_vertex_count = len(side_vertices)
    comps = _component_count_on(side, g)
    loops_g2 = len(side) - g2_vertex_count + comps
    sign = -1 if (loops_g2 + 1) % 2 else 1
    return OrientedGraph(g.n, edges), sign


def _component_count_on(edge_set, g):
    verts = sorted({x for i in edge_set for x in g.edges[i]})
    idx = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = len(verts)
    for i in edge_set:
        t, h = g.edges[i]
        rt, rh = find(idx[t]), find(idx[h])
        if rt != rh:
            parent[rt] = rh
            comps -= 1
    return comps


# ---------------------------------------------------------------------------
# connectivity helpers used by the vanishing criteria

def has_bridge(g):
    return bool(_bridges(g))


def _bridges(g):
    adj = [[] for _ in range(g.n)]
    for i, (t, h) in enumerate(g.edges):
        if t != h:
            adj[t].append((h, i))
            adj[h].append((t, i))
    visited = [False] * g.n
    disc = [0] * g.n
    low = [0] * g.n
    timer = [1]
    bridges = []

    def dfs(root):
        stack = [(root, -1, iter(adj[root]))]
        visited[root] = True
        disc[root] = low[root] = timer[0]
        timer[0] += 1
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, ei in it:
                if ei == pe:
                    continue
                if visited[w]:
                    low[v] = min(low[v], disc[w])
                else:
                    visited[w] = True
                    disc[w] = low[w] = timer[0]
                    timer[0] += 1
                    stack.append((w, ei, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        bridges.append(pe)
    for v in range(g.n):
        if not visited[v] and adj[v]:
            dfs(v)
    return bridges


def has_two_edge_cut(g):
    """True if removing some pair of edges disconnects g (includes bridges)."""
    if not is_connected(g):
        return True
    if has_bridge(g):
        return True
    m = g.m
    base = component_count(g)
    for i in range(m):
        for j in range(i + 1, m):
            edges = [e for k, e in enumerate(g.edges) if k != i and k != j]
            h = OrientedGraph(g.n, edges)
            if component_count(h) > base:
                return True
    return False


def cut_vertices(g):
    """Articulation vertices of the multigraph."""
    adj = [[] for _ in range(g.n)]
    for i, (t, h) in enumerate(g.edges):
        if t != h:
            adj[t].append((h, i))
            adj[h].append((t, i))
    visited = [False] * g.n
    disc = [0] * g.n
    low = [0] * g.n
    timer = [1]
    cuts = set()

    def dfs(root):
        visited[root] = True
        disc[root] = low[root] = timer[0]
        timer[0] += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, ei in it:
                if ei == pe:
                    continue
                if visited[w]:
                    low[v] = min(low[v], disc[w])
                else:
                    visited[w] = True
                    disc[w] = low[w] = timer[0]
                    timer[0] += 1
                    stack.append((w, ei, iter(adj[w])))
                    advanced = True
                    if v == root:
                        root_children += 1
                    break
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if u != root and low[v] >= disc[u]:
                        cuts.add(u)
        if root_children > 1:
            cuts.add(root)

    for v in range(g.n):
        if not visited[v] and adj[v]:
            dfs(v)
    return sorted(cuts)


# ---------------------------------------------------------------------------
# enumeration

def _degree_sequences(n, m, min_valence):
    """Non-increasing degree sequences with n parts >= min_valence, sum 2m."""
    total = 2 * m
    out = []

    def rec(parts, remaining, maxpart):
        k = len(parts)
        if k == n:
            if remaining == 0:
                out.append(tuple(parts))
            return
        slots = n - k
        for d in range(min(maxpart, remaining - min_valence * (slots - 1)),
                       min_valence - 1, -1):
            if d * slots < remaining:
                break
            parts.append(d)
            rec(parts, remaining - d, d)
            parts.pop()

    rec([], total, m)
    return out


def enumerate_graphs(n, m, min_valence=3, connected=True,
                     max_vertices=ENUM_MAX_VERTICES, max_edges=ENUM_MAX_EDGES):
    """All isomorphism classes of self-loop-free multigraphs with the given
    vertex/edge counts and minimum valence.  Returns a list of (CanonicalKey,
    odd) pairs sorted by key; odd marks classes with an orientation-reversing
    automorphism (which vanish in the graph complex).
    """
    if n > max_vertices or m > max_edges:
        raise ValueError(f"enumeration capped at {max_vertices} vertices / "
                         f"{max_edges} edges (requested {n},{m})")
    found = {}
    for degs in _degree_sequences(n, m, min_valence):
        _enumerate_with_degrees(n, list(degs), found, connected)
    return sorted(found.items())


def _enumerate_with_degrees(n, degs, found, connected):
    """Column-wise orderly generation for one fixed degree sequence.

    Vertex p is placed by choosing its multiplicities to vertices 0..p-1.
    Pruning keeps only columns that are non-increasing across previously
    indistinguishable vertices, a necessary condition for the canonical
    (lexicographically maximal) representative; the final canonical check
    makes the enumeration exact.
    """
    mult = [[0] * n for _ in range(n)]
    residual = degs[:]
    # same[q] is True while vertices q and q+1 have equal degree and equal
    # adjacency to every other already-placed vertex
    same = [False] * max(n, 1)
    suffix_deg = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_deg[i] = suffix_deg[i + 1] + degs[i]

    def emit():
        g_edges = []
        for i in range(n):
            for j in range(i + 1, n):
                g_edges.extend([(i, j)] * mult[i][j])
        g = OrientedGraph(n, g_edges)
        if connected and not is_connected(g):
            return
        info, _ = _info_for(n, g.multiplicity(), degs)
        if _triangle(g.multiplicity(), n) == info.key.tri:
            found[info.key] = info.odd

    def place(p):
        if p == n:
            if not any(residual):
                emit()
            return
        # every unresolved residual among placed vertices must be coverable
        # by edges towards vertices p..n-1
        if sum(residual[:p]) > suffix_deg[p]:
            return
        col = [0] * p

        def apply_column():
            saved_same = same[:p]
            for x in range(p):
                mult[x][p] = mult[p][x] = col[x]
                residual[x] -= col[x]
            residual[p] -= sum(col)
            for x in range(p - 1):
                if same[x] and col[x] != col[x + 1]:
                    same[x] = False
            if p >= 1:
                same[p - 1] = (degs[p - 1] == degs[p] and
                               all(mult[x][p - 1] == mult[x][p]
                                   for x in range(p - 1)))
            place(p + 1)
            for x in range(p):
                residual[x] += col[x]
                mult[x][p] = mult[p][x] = 0
            residual[p] += sum(col)
            same[:p] = saved_same

        def fill(q, used):
            if q == p:
                leftover = degs[p] - used
                if p == n - 1 and leftover:
                    return
                apply_column()
                return
            cap = min(residual[q], degs[p] - used)
            if q >= 1 and same[q - 1]:
                cap = min(cap, col[q - 1])
            for c in range(cap, -1, -1):
                col[q] = c
                fill(q + 1, used + c)
            col[q] = 0

        fill(0, 0)

    place(0)


# ---------------------------------------------------------------------------
# standard graphs

def dipole(m):
    """D_m: two vertices joined by m parallel edges, all directed 0 -> 1."""
    return OrientedGraph(2, [(0, 1)] * m)


def theta():
    return dipole(3)


def k4():
    return OrientedGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def t122():
    """Triangle with multiplicities (1, 2, 2): the boundary graph of K4."""
    return OrientedGraph(3, [(0, 1), (0, 2), (0, 2), (1, 2), (1, 2)])


def prism(flip_first_edge=False):
    """Triangular prism Y_3 (two triangles joined by a matching).

    The orientation matters for signed brackets; `flip_first_edge` selects
    the representative with the opposite orientation class.
    """
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5),
             (3, 4), (3, 5), (4, 5)]
    g = OrientedGraph(6, edges)
    return g.reverse_edge(0) if flip_first_edge else g
