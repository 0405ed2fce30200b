"""Pure-Python twin of the compiled product kernel.

Sparse convolution of word->coefficient dicts, truncated at word length n.
Kept free of package imports so both kernels stay drop-in replacements.
"""


def mul_dicts(xc, yc, n):
    out = {}
    get = out.get
    for w1, c1 in xc.items():
        r = n - len(w1)
        if r < 0:
            continue
        for w2, c2 in yc.items():
            if len(w2) > r:
                continue
            w = w1 + w2
            acc = get(w)
            if acc is None:
                out[w] = c1 * c2
            else:
                acc = acc + c1 * c2
                if acc:
                    out[w] = acc
                else:
                    del out[w]
    return out
