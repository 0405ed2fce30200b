# cython: language_level=3
# Compiled twin of _product_py.mul_dicts.  Coefficients stay arbitrary
# Python numbers (Fraction); the win is C-speed loops, tuple concat and
# dict traffic, which dominate the truncated product.


def mul_dicts(dict xc, dict yc, Py_ssize_t n):
    cdef dict out = {}
    cdef tuple w1, w2, w
    cdef Py_ssize_t r
    cdef object c1, c2, acc
    for w1, c1 in xc.items():
        r = n - len(w1)
        if r < 0:
            continue
        for w2, c2 in yc.items():
            if len(w2) > r:
                continue
            w = w1 + w2
            acc = out.get(w)
            if acc is None:
                out[w] = c1 * c2
            else:
                acc = acc + c1 * c2
                if acc:
                    out[w] = acc
                else:
                    del out[w]
    return out
