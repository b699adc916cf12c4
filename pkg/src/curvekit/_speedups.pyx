# cython: language_level=3
"""Compiled compute kernels: the C twin of ``curvekit._fallback``.

Function-for-function identical behaviour and ordering; the depth-first
search runs on flat C arrays with an explicit stack instead of Python
recursion.  ``curvekit.kernels`` picks whichever twin imports.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

BACKEND = "compiled"


cdef class _AdmissibleStream:
    """Iterator over admissible edge-weight vectors in ascending lex order.

    One stack frame per edge id; a frame holds the feasible parity-stepped
    interval for its edge given all smaller ids, and advancing a frame either
    descends, emits a full vector, or backtracks.
    """

    cdef int ne
    cdef int *vec
    cdef int *cur
    cdef int *hi
    cdef int *stp
    cdef int *rem
    cdef char *tig
    cdef int *cl_start
    cdef int *cl_i
    cdef int *cl_j
    cdef char *forced
    cdef int *aft
    cdef bint has_after
    cdef int level
    cdef bint root_pending

    def __cinit__(self, int num_edges, closings, int budget, forced_zero, after):
        cdef int e, k, total
        self.ne = num_edges
        self.level = -1
        self.root_pending = False
        self.has_after = after is not None

        total = 0
        for e in range(num_edges):
            total += len(closings[e])
        self.vec = <int *> PyMem_Malloc(max(num_edges, 1) * sizeof(int))
        self.cur = <int *> PyMem_Malloc(max(num_edges, 1) * sizeof(int))
        self.hi = <int *> PyMem_Malloc(max(num_edges, 1) * sizeof(int))
        self.stp = <int *> PyMem_Malloc(max(num_edges, 1) * sizeof(int))
        self.rem = <int *> PyMem_Malloc(max(num_edges, 1) * sizeof(int))
        self.aft = <int *> PyMem_Malloc(max(num_edges, 1) * sizeof(int))
        self.tig = <char *> PyMem_Malloc(max(num_edges, 1) * sizeof(char))
        self.forced = <char *> PyMem_Malloc(max(num_edges, 1) * sizeof(char))
        self.cl_start = <int *> PyMem_Malloc((num_edges + 1) * sizeof(int))
        self.cl_i = <int *> PyMem_Malloc(max(total, 1) * sizeof(int))
        self.cl_j = <int *> PyMem_Malloc(max(total, 1) * sizeof(int))
        if (self.vec == NULL or self.cur == NULL or self.hi == NULL
                or self.stp == NULL or self.rem == NULL or self.aft == NULL
                or self.tig == NULL or self.forced == NULL
                or self.cl_start == NULL or self.cl_i == NULL
                or self.cl_j == NULL):
            raise MemoryError()

        k = 0
        for e in range(num_edges):
            self.cl_start[e] = k
            for pair in closings[e]:
                self.cl_i[k] = pair[0]
                self.cl_j[k] = pair[1]
                k += 1
            self.vec[e] = 0
            self.forced[e] = 1 if forced_zero[e] else 0
            self.aft[e] = after[e] if self.has_after else 0
        self.cl_start[num_edges] = k

        if num_edges == 0:
            self.root_pending = not self.has_after
        elif self._init_frame(0, budget, self.has_after):
            self.level = 0

    def __dealloc__(self):
        PyMem_Free(self.vec)
        PyMem_Free(self.cur)
        PyMem_Free(self.hi)
        PyMem_Free(self.stp)
        PyMem_Free(self.rem)
        PyMem_Free(self.aft)
        PyMem_Free(self.tig)
        PyMem_Free(self.forced)
        PyMem_Free(self.cl_start)
        PyMem_Free(self.cl_i)
        PyMem_Free(self.cl_j)

    cdef bint _init_frame(self, int e, int remaining, bint tight):
        """Bound the feasible interval for edge ``e``; False when empty."""
        cdef int lo = 0
        cdef int hicap = remaining
        cdef int parity = -1
        cdef int k, vi, vj, d, s, p, step
        for k in range(self.cl_start[e], self.cl_start[e + 1]):
            vi = self.vec[self.cl_i[k]]
            vj = self.vec[self.cl_j[k]]
            d = vi - vj if vi >= vj else vj - vi
            if d > lo:
                lo = d
            s = vi + vj
            if s < hicap:
                hicap = s
            p = s & 1
            if parity < 0:
                parity = p
            elif parity != p:
                return False
        if self.forced[e]:
            if lo > 0 or parity > 0:
                return False
            hicap = 0
        step = 1
        if parity >= 0:
            if (lo & 1) != parity:
                lo += 1
            step = 2
        if tight and self.aft[e] > lo:
            lo = self.aft[e]
            if parity >= 0 and (lo & 1) != parity:
                lo += 1
        if lo > hicap:
            return False
        self.rem[e] = remaining
        self.tig[e] = 1 if tight else 0
        self.cur[e] = lo - step
        self.hi[e] = hicap
        self.stp[e] = step
        return True

    def __iter__(self):
        return self

    def __next__(self):
        cdef int e
        cdef bint child_tight
        if self.root_pending:
            self.root_pending = False
            return ()
        while True:
            e = self.level
            if e < 0:
                raise StopIteration
            self.cur[e] += self.stp[e]
            if self.cur[e] > self.hi[e]:
                self.level = e - 1
                continue
            self.vec[e] = self.cur[e]
            child_tight = self.tig[e] and self.cur[e] == self.aft[e]
            if e == self.ne - 1:
                if not child_tight:
                    return tuple([self.vec[k] for k in range(self.ne)])
                continue
            if self._init_frame(e + 1, self.rem[e] - self.cur[e], child_tight):
                self.level = e + 1


def admissible_stream(num_edges, closings, budget, forced_zero, after=None):
    """Admissible edge-weight vectors with L1 norm <= ``budget``, in
    ascending lexicographic order; see ``curvekit._fallback`` for the
    reference semantics."""
    return _AdmissibleStream(num_edges, closings, budget, forced_zero, after)
