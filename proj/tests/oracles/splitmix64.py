"""Reference SplitMix64 outputs frozen in the C++ tests."""
M = (1 << 64) - 1


def splitmix64(seed):
    state = seed
    while True:
        state = (state + 0x9E3779B97F4A7C15) & M
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
        yield z ^ (z >> 31)


if __name__ == "__main__":
    gen = splitmix64(1234567)
    print([next(gen) for _ in range(3)])
