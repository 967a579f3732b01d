"""Goepel groups in genus 1-3 and their even cosets."""
from goepel import characteristics as ch

for g in (1, 2, 3):
    groups = ch.enumerate_gopel_groups(g)
    print(f"genus {g}: {len(groups)} Goepel groups, {len(ch.even_characteristics(g))} even characteristics")

groups = ch.enumerate_gopel_groups(3)
G = groups[0]
print("the standard group is its own even coset:", ch.even_coset(G.elements, 3) == G.elements)
G = next(H for H in groups if ch.even_coset(H.elements, 3) != H.elements)
print("a genus-3 group:", [ch.unpack(m, 3) for m in sorted(G.elements)])
print("its unique even coset:", [ch.unpack(m, 3) for m in sorted(ch.even_coset(G.elements, 3))])
