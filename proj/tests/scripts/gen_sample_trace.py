"""Reference trace for corpus sampling, written from the published MT19937-64
algorithm (Matsumoto & Nishimura) rather than the C++ standard library.

sample_indices(population, n, seed): partial Fisher-Yates over 0..population-1
where step i swaps i with i + draw(population - i); draw(b) rejects raw
outputs below (2^64 - b) mod b and returns x mod b. Result sorted ascending.
"""
import sys
from pathlib import Path

MASK = (1 << 64) - 1


class MT64:
    NN, MM = 312, 156
    MATRIX_A = 0xB5026F5AA96619E9
    UM, LM = 0xFFFFFFFF80000000, 0x7FFFFFFF

    def __init__(self, seed):
        self.mt = [0] * self.NN
        self.mt[0] = seed & MASK
        for i in range(1, self.NN):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.mti = self.NN

    def next(self):
        if self.mti >= self.NN:
            mt = self.mt
            for i in range(self.NN):
                x = (mt[i] & self.UM) | (mt[(i + 1) % self.NN] & self.LM)
                xa = x >> 1
                if x & 1:
                    xa ^= self.MATRIX_A
                mt[i] = mt[(i + self.MM) % self.NN] ^ xa
            self.mti = 0
        x = self.mt[self.mti]
        self.mti += 1
        x ^= (x >> 29) & 0x5555555555555555
        x ^= (x << 17) & 0x71D67FFFEDA60000
        x ^= (x << 37) & 0xFFF7EEE000000000
        x ^= x >> 43
        return x & MASK


def draw(rng, bound):
    threshold = ((1 << 64) - bound) % bound
    while True:
        x = rng.next()
        if x >= threshold:
            return x % bound


def sample_indices(population, n, seed):
    perm = list(range(population))
    rng = MT64(seed)
    for i in range(n):
        j = i + draw(rng, population - i)
        perm[i], perm[j] = perm[j], perm[i]
    return sorted(perm[:n])


def main(out: Path) -> None:
    # Known-answer check: 10000th output for the default seed 5489.
    rng = MT64(5489)
    for _ in range(9999):
        rng.next()
    assert rng.next() == 9981545732273789042
    idx = sample_indices(10000, 1000, 42)
    out.write_text("# population=10000 n=1000 seed=42\n" + "\n".join(map(str, idx)) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "data" / "sample_trace.txt"))
