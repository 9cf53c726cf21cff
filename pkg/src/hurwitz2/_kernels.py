"""Word-rewriting kernels for the genus-2 surface group.

Letters are signed integers: a1=1, b1=2, a2=3, b2=4, inverses negated.
All kernels take and return 1-d ``int64`` arrays and are compiled with numba
unless the fallback is selected (see ``_accel``).
"""
import numpy as np

from ._accel import jit

RELATOR = np.array([1, 2, -1, -2, 3, 4, -3, -4], dtype=np.int64)
RELATOR_LENGTH = 8
# strictly more than half the relator
DEHN_WINDOW = 5
_BASE = 9


def _window_key(letters):
    key = 0
    for x in letters:
        key = key * _BASE + (int(x) + 4)
    return key


def _build_tables():
    size = _BASE**DEHN_WINDOW
    flag = np.zeros(size, dtype=np.uint8)
    comp = np.zeros((size, RELATOR_LENGTH - DEHN_WINDOW), dtype=np.int64)
    for rel in (RELATOR, -RELATOR[::-1]):
        for shift in range(RELATOR_LENGTH):
            rot = np.roll(rel, -shift)
            head, tail = rot[:DEHN_WINDOW], rot[DEHN_WINDOW:]
            k = _window_key(head)
            flag[k] = 1
            # head * tail = 1, so head = tail^-1
            comp[k] = -tail[::-1]
    return flag, comp


WINDOW_FLAG, WINDOW_COMP = _build_tables()


@jit
def free_reduce(word):
    out = np.empty(word.shape[0], dtype=np.int64)
    n = 0
    for i in range(word.shape[0]):
        x = word[i]
        if n > 0 and out[n - 1] == -x:
            n -= 1
        else:
            out[n] = x
            n += 1
    return out[:n].copy()


@jit
def dehn_reduce(word, flag, comp):
    """Free and Dehn reduction with a stack; every replacement shortens by 2."""
    n_in = word.shape[0]
    todo = np.empty(n_in + 8, dtype=np.int64)
    t = 0
    for i in range(n_in - 1, -1, -1):
        todo[t] = word[i]
        t += 1
    out = np.empty(n_in + 8, dtype=np.int64)
    n = 0
    while t > 0:
        t -= 1
        x = todo[t]
        if n > 0 and out[n - 1] == -x:
            n -= 1
            continue
        out[n] = x
        n += 1
        if n >= 5:
            key = 0
            for j in range(n - 5, n):
                key = key * 9 + (out[j] + 4)
            if flag[key]:
                n -= 5
                # complement goes back through the pipeline in order
                for j in range(comp.shape[1] - 1, -1, -1):
                    todo[t] = comp[key, j]
                    t += 1
    return out[:n].copy()


@jit
def substitute(word, flat, offsets):
    """Replace each letter x by flat[offsets[x+4]:offsets[x+5]]."""
    total = 0
    for i in range(word.shape[0]):
        k = word[i] + 4
        total += offsets[k + 1] - offsets[k]
    out = np.empty(total, dtype=np.int64)
    n = 0
    for i in range(word.shape[0]):
        k = word[i] + 4
        for j in range(offsets[k], offsets[k + 1]):
            out[n] = flat[j]
            n += 1
    return out


@jit
def substitute_reduce(word, flat, offsets, flag, comp):
    return dehn_reduce(substitute(word, flat, offsets), flag, comp)


@jit
def wrap_window(word, flag):
    """Start of a length-5 relator window crossing the end of the cyclic word, or -1."""
    n = word.shape[0]
    if n < 5:
        return -1
    for start in range(n - 4, n):
        key = 0
        for j in range(5):
            key = key * 9 + (word[(start + j) % n] + 4)
        if flag[key]:
            return start
    return -1


def pack_images(images):
    """Flatten 9 slot images (index x+4 for letters -4..4) into (flat, offsets)."""
    offsets = np.zeros(10, dtype=np.int64)
    parts = []
    for k in range(9):
        img = np.asarray(images[k], dtype=np.int64)
        parts.append(img)
        offsets[k + 1] = offsets[k] + img.shape[0]
    flat = np.concatenate(parts) if offsets[-1] else np.zeros(0, dtype=np.int64)
    return flat, offsets


@jit
def conjugacy_search(u, v, s_flat, s_offsets, flag, comp):
    """Find (s, k, j) with s^-1 * rot(u, k) * s == rot(v, j) in the group.

    ``s`` ranges over the packed short words in order; returns (-1, -1, -1)
    when no combination works.
    """
    nu = u.shape[0]
    nv = v.shape[0]
    n_s = s_offsets.shape[0] - 1
    longest = 0
    for si in range(n_s):
        longest = max(longest, s_offsets[si + 1] - s_offsets[si])
    buf = np.empty(nu + nv + 2 * longest + 8, dtype=np.int64)
    for si in range(n_s):
        a = s_offsets[si]
        b = s_offsets[si + 1]
        for k in range(nu):
            for j in range(nv):
                m = 0
                for q in range(b - 1, a - 1, -1):
                    buf[m] = -s_flat[q]
                    m += 1
                for q in range(nu):
                    buf[m] = u[(k + q) % nu]
                    m += 1
                for q in range(a, b):
                    buf[m] = s_flat[q]
                    m += 1
                for q in range(nv - 1, -1, -1):
                    buf[m] = -v[(j + q) % nv]
                    m += 1
                if dehn_reduce(buf[:m], flag, comp).shape[0] == 0:
                    return si, k, j
    return -1, -1, -1
