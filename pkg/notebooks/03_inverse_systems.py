"""
Inverse systems and minimal generators
======================================

For a system with a finite-dimensional solution space the sections can be
written down explicitly as modular equations: lists of values a^mu of a
solution's derivatives.  Derivation acts on them by shifting indices down,
and a few sections generate the rest.
"""

# %%
from pdmod import analysis, build_dual, complete, delocalize, derivate, min_generators, parse_system
from pdmod import dual

inv = complete(parse_system("n=3\ny[0,0,2]=0\ny[0,1,1]-y[2,0,0]=0\ny[0,2,0]=0\n"))
R = build_dual(inv)
print("dim R =", R.dim, "| basis dual to", [str(j) for j in R.basis])
print("maximal points:", *dual.maximal_points(R))

# %%
# One section generates all eight: its derivates span R.
G = min_generators(R)
E = G.sections[0]
print("generator:", E)
print("d_1 E =", derivate(E, 1))
print("depth of the derivative cascade:", G.depth)

# %%
# A system that is not of finite type becomes one after inverting x1.
two = complete(parse_system("n=3\ny[0,0,2]=0\ny[0,1,1]-y[1,0,1]=0\ny[0,2,0]-y[1,1,0]=0\n"))
L = analysis.localize(two)
RL = build_dual(L)
print("localized over", RL.field, "| dim", RL.dim)
print("points:", *dual.maximal_points(RL))
GL = min_generators(RL)
print("local generator coordinates:", [str(c) for c in GL.vectors[0]])

# %%
# Clearing x1 from the local generator gives ordinary modular equations in
# all three variables, which again generate the sections of order 2.
d = delocalize(RL, GL.vectors[0], two.order)
print(f"delta={d.delta} tau={d.tau} q'={d.qprime}")
for alpha, Ea in d.equations:
    print("E_" + dual.alpha_name(alpha), "=", Ea)
print("generates:", dual.derivate_generation_check([Ea for _, Ea in d.equations], two.order, two.system))

# %%
# Parameters enter through the coefficient field; a special value can
# change the number of generators.
family = parse_system("n=2 params=a\ny[0,2]=0\ny[1,1]-a*y[0,1]=0\ny[2,0]-a*y[1,0]=0\n")
Gf = min_generators(build_dual(complete(family)))
print("generic a:", Gf.count, "generator(s), valid while", Gf.branch_conditions)
from pdmod.jets import specialize

G0 = min_generators(build_dual(complete(specialize(family, {"a": 0}))))
print("a = 0:", G0.count, "generator(s)")
