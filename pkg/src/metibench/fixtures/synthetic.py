"""
Synthetic workload with a configurable cost model.

Environment:
  BASE_MS       cost of one iteration in milliseconds (default 0)
  NITERS        number of iterations (default 1)
  SETUP_MS      fixed start-up cost in milliseconds (default 0)
  DRIFT_PCT     multiplicative drift per invocation, in percent (needs STATE_FILE)
  STATE_FILE    file holding the invocation counter
  OUTLIER_P     probability that an invocation is an outlier (default 0)
  OUTLIER_MULT  cost multiplier of an outlier invocation (default 1)
  SEED          seed for the outlier draw (default 0)
  EXIT_CODE     exit status to report (default 0)
  MODE          busy (spin on the CPU) or sleep (default busy)

Total cost = SETUP_MS + NITERS * BASE_MS * drift * outlier factor.
"""

import os
import random
import sys
import time


def fail(msg):
    print(msg, file=sys.stderr)
    sys.exit(2)


def get_env(var, descr, parse, default):
    raw = os.environ.get(var)
    if raw is None or raw == "":
        return default
    try:
        return parse(raw)
    except ValueError:
        fail(f'environment variable "{var}" has incorrect value "{raw}"; expected {descr}')


def non_negative(parse):
    def inner(raw):
        v = parse(raw)
        if v < 0:
            raise ValueError(raw)
        return v

    return inner


def probability(raw):
    v = float(raw)
    if not 0 <= v <= 1:
        raise ValueError(raw)
    return v


def mode(raw):
    if raw not in ("busy", "sleep"):
        raise ValueError(raw)
    return raw


def bump_counter(path):
    """Return how many times the workload ran before, and record this run."""
    try:
        with open(path, encoding="utf-8") as f:
            count = int(f.read().strip() or "0")
    except FileNotFoundError:
        count = 0
    except ValueError:
        fail(f'STATE_FILE "{path}" does not hold an invocation count')
    with open(path, "w", encoding="utf-8") as f:
        f.write(str(count + 1))
    return count


def spend(seconds, how):
    if seconds <= 0:
        return
    if how == "sleep":
        time.sleep(seconds)
        return
    deadline = time.perf_counter() + seconds
    while time.perf_counter() < deadline:
        pass


def main():
    base_ms = get_env("BASE_MS", "a non-negative number", non_negative(float), 0.0)
    niters = get_env("NITERS", "a non-negative integer", non_negative(int), 1)
    setup_ms = get_env("SETUP_MS", "a non-negative number", non_negative(float), 0.0)
    drift_pct = get_env("DRIFT_PCT", "a number", float, 0.0)
    outlier_p = get_env("OUTLIER_P", "a probability", probability, 0.0)
    outlier_mult = get_env("OUTLIER_MULT", "a non-negative number", non_negative(float), 1.0)
    seed = get_env("SEED", "an integer", int, 0)
    exit_code = get_env("EXIT_CODE", "an integer", int, 0)
    how = get_env("MODE", "busy or sleep", mode, "busy")
    state_file = os.environ.get("STATE_FILE")

    if drift_pct and not state_file:
        fail('environment variable "STATE_FILE" is missing; DRIFT_PCT needs it')

    invocation = bump_counter(state_file) if state_file else 0
    factor = (1 + drift_pct / 100) ** invocation
    if random.Random(f"{seed}:{invocation}").random() < outlier_p:
        factor *= outlier_mult

    spend(setup_ms / 1000, how)
    spend(niters * base_ms * factor / 1000, how)
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
