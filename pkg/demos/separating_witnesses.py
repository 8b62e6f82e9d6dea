"""Walk through the elements that tell the groups apart.

Each step builds an element, prints its norms and memberships, and shows
the conjugation that pushes a generator out of the preserved subspace.

    python3 demos/separating_witnesses.py
"""

from cliffgroups import A, GAMMA, P, Q, Q_PRIME, GroupId, Signature, chi, member, preserves_subspace, psi


def show(sig, text, groups):
    T = sig.mv(text)
    print(f"{sig.label}: T = {T}")
    print(f"  psi(T) = {psi(T)}    chi(T) = {chi(T)}")
    for g in groups:
        print(f"  in {g.name:10} {member(T, g)}")
    return T


def main():
    print("1. e12 + 2 e34 keeps parity but its psi-norm has a grade-4 part.")
    show(Signature(4, 0), "e12 + 2*e34", (P, A, Q))

    print("\n2. 1 + 2 e123 has scalar psi-norm, yet mixes parities.")
    show(Signature(4, 0), "1 + 2*e123", (A, P, Q))

    print("\n3. With the pseudoscalar allowed in the norm, 1 + 2 e1234 joins Q'.")
    show(Signature(4, 0), "1 + 2*e1234", (Q_PRIME, Q))

    print("\n4. In Cl(1,3), 1 + e1234 fixes the bar-2 grades but moves e1 to grade 3.")
    sig = Signature(1, 3)
    T = show(sig, "1 + e1234", (GroupId.gamma_bar(2), GroupId.gamma_bar(1)))
    r = preserves_subspace(T, GroupId.gamma_bar(1).subspace(4))
    print(f"  T e1 T^-1 = {r.image}")

    print("\n5. At n = 6, e12 + e3456 lies in Q but sends e1 to a 5-vector.")
    sig = Signature(6, 0)
    T = show(sig, "e12 + e3456", (Q, GAMMA))
    r = preserves_subspace(T, GAMMA.subspace(6))
    print(f"  T e1 T^-1 = {r.image}")


if __name__ == "__main__":
    main()
