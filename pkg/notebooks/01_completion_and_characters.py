"""
Completion to involution and what it tells us
=============================================

A linear PD system with constant coefficients is read as a module over the
polynomial ring: each jet y_mu of an unknown becomes the monomial chi^mu.
Completing the system exposes the hidden integrability conditions and the
counts (characters) that describe the size of the solution space.
"""

# %%
from pdmod import characters, complete, hilbert_dims, parse_system, solution_dim

# Two second-order equations in three variables.  The cross-derivative of the
# second one hides the condition y_23 = 0, and one more step gives y_22 = 0.
s = parse_system("""
n=3
y[0,0,2] = 0
y[1,0,1] - y[0,1,0] = 0
""")
inv = complete(s)
print("involutive form:")
for e in inv.equations:
    print("   ", e, "= 0")
print("log:", *inv.log, sep="\n    ")

# %%
# Characters count the parametric derivatives of top order per class.  The
# codimension is the number of trailing zero characters: here the general
# solution depends on two functions of a single variable.
alpha, r = characters(inv)
print("characters", alpha, "codimension", r)
print("dims of the jet spaces modulo the system:", hilbert_dims(inv, 5).R)

# %%
# A system whose solutions form a finite-dimensional space has codimension n.
finite = complete(parse_system("n=3\ny[0,0,2]=0\ny[0,1,1]-y[2,0,0]=0\ny[0,2,0]=0\n"))
print("solution space dimension:", solution_dim(finite))
print("symbol dims by order:", hilbert_dims(finite, 5).g)

# %%
# When the given coordinates hide the class structure the completion tries
# seeded integer changes of coordinates and records the one it keeps.
cross = complete(parse_system("n=3\ny[1,0,0]=0\ny[0,1,1]=0\n"), seed=3)
print("coordinate change:", [[str(c) for c in row] for row in cross.change])
print("characters after the change:", characters(cross))
