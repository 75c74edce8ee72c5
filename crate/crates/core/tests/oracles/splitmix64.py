"""Standalone SplitMix64 reference used to freeze expected values in the Rust tests.

Run: python3 splitmix64.py
"""

MASK = (1 << 64) - 1


def step(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    z = z ^ (z >> 31)
    return (z >> 11) / float(1 << 53), state


def draws(seed, k):
    out = []
    s = seed
    for _ in range(k):
        u, s = step(s)
        out.append((u, s))
    return out


if __name__ == "__main__":
    for seed in (0, 1, 3, 7, 42):
        print("seed", seed)
        for u, s in draws(seed, 4):
            print("  u=%r state=%d" % (u, s))
