"""Which groups coincide in low dimension?

For each n <= 5 the groups are sorted into classes by membership on a
seeded corpus, in every signature, and compared with the expected lists.

    python3 demos/small_n_catalog.py
"""

from cliffgroups.verify import small_n_catalog


def main():
    for n in range(1, 6):
        rep = small_n_catalog(n)
        print(f"n = {n}: {rep.class_count} classes, "
              f"{'matches' if rep.ok else 'DIFFERS'} in all {len(rep.per_signature)} signatures")
        for cls in rep.expected:
            print("   ", " = ".join(g.name for g in cls))


if __name__ == "__main__":
    main()
