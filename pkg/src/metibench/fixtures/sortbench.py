"""
Compare two list sorts on random integers.

Environment:
  IMPL    quicksort | mergesort
  SIZE    list length; values are drawn from [0, SIZE)
  NITERS  how many times to sort the list
  SEED    optional seed for the input list

The first sort is checked against the built-in sort; a wrong result exits 1.
"""

import os
import random
import sys

sys.setrecursionlimit(100_000)


def quicksort(xs):
    n = len(xs)
    if n <= 1:
        return xs
    if n == 2:
        return xs if xs[0] < xs[1] else [xs[1], xs[0]]
    # first element as pivot, no randomization
    x = xs[0]
    left, right = [], []
    for y in xs[1:]:
        if y <= x:
            left.append(y)
        else:
            right.append(y)
    return quicksort(left) + [x] + quicksort(right)


def merge(xs, ys):
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        if xs[i] <= ys[j]:
            out.append(xs[i])
            i += 1
        else:
            out.append(ys[j])
            j += 1
    out.extend(xs[i:])
    out.extend(ys[j:])
    return out


def mergesort(xs):
    n = len(xs)
    if n <= 1:
        return xs
    if n == 2:
        return xs if xs[0] < xs[1] else [xs[1], xs[0]]
    return merge(mergesort(xs[0::2]), mergesort(xs[1::2]))


IMPLEMENTATIONS = {"quicksort": quicksort, "mergesort": mergesort}


def get_env(var, descr, parse):
    raw = os.environ.get(var)
    if raw is None:
        print(f'environment variable "{var}" is missing', file=sys.stderr)
        sys.exit(2)
    value = parse(raw)
    if value is None:
        print(f'environment variable "{var}" has incorrect value "{raw}"; expected {descr}', file=sys.stderr)
        sys.exit(2)
    return value


def natural(raw):
    try:
        v = int(raw)
    except ValueError:
        return None
    return v if v >= 0 else None


def main():
    impl = get_env("IMPL", "[quicksort | mergesort]", IMPLEMENTATIONS.get)
    size = get_env("SIZE", "a number", natural)
    n_iters = get_env("NITERS", "a number", natural)
    seed = os.environ.get("SEED")

    rng = random.Random(int(seed)) if seed else random.Random()
    data = [rng.randrange(size) for _ in range(size)]
    expected = sorted(data)

    if n_iters == 0:
        return
    if impl(data) != expected:
        print(f"sort output differs from the trusted sort (SIZE={size})", file=sys.stderr)
        sys.exit(1)
    for _ in range(n_iters - 1):
        impl(data)


if __name__ == "__main__":
    main()
