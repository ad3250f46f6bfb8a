"""
Torsion, purity and parametrizations
====================================

An element of the module is torsion when some nonzero operator kills it.
The torsion chain sorts such elements by codimension, the purity test asks
whether every element has the codimension of the whole module, and a
torsion-free system can be written through free potentials.
"""

# %%
from pdmod import analysis, complete, parse_system
from pdmod.jets import specialize

# y_22 = y_12 = 0 is solved by f(x1) + c*x2: a codimension-1 part plus a
# constant that is killed by both derivatives.
mixed = complete(parse_system("n=2\ny[0,2]=0\ny[1,1]=0\n"))
verdict = analysis.purity_test(mixed)
print("pure:", verdict.pure, "| codimension", verdict.codim)
print("witness:", *verdict.witnesses)

# %%
chain = analysis.torsion_chain(mixed)
for level in chain.levels:
    gens = ", ".join(f"{g} (codim {c})" for g, c in zip(level.generators, level.codims))
    print(f"t_{level.r}:", "M" if level.is_whole_module else gens or "0")

# %%
# The pure part drops the lower-dimensional component.
print("pure part:", *analysis.pure_part(mixed).equations)

# %%
# A parametrized family of ODE systems.  For generic a the module is torsion
# free and a single potential describes every solution.
coupled = parse_system("""
n=1 m=3 params=a
y1[1] - a*y2[0] - y3[1] = 0
y1[0] - y2[1] + y3[1] = 0
""")
par = analysis.parametrize(coupled)
print("y_k = P_k(d) phi with P =", [str(p) for p in par.rows[0]])
print("valid while", ", ".join(par.branch_conditions))

# %%
# At a = 0 the entries share a root and a torsion element appears.
res = analysis.parametrize(specialize(coupled, {"a": 0}))
print("torsion element:", res.witness, "| killed by", res.killer)
