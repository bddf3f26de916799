"""Elementary orthogonal transvections, the hyperbolic embedding and mu.

Run: python demos/transvection_algebra.py
"""

from eoreduce.orthocore import (
    OrthoVector,
    Transvection,
    apply_word,
    gl_word_product,
    hyperbolic_embed,
    is_orthogonal,
    mu,
    mu_word,
    quad_form,
    transvection_matrix,
)
from eoreduce.polyring import CoeffRing, parse_poly

F5 = CoeffRing.gf(5)
x = parse_poly("x1", F5, 1)
r = 3

# a long and a short transvection acting on e_1 in O(7)
e1 = OrthoVector.basis(F5, 1, r, True, 1)
word = [Transvection(-2, 1, x), Transvection(-1, 0, x + 1)]
b = apply_word(word, e1)
print("column:", b.to_json())
print("q(column) =", quad_form(b))

# T_{1,2}(x) is orthogonal and agrees with T_{-2,-1}(-x)
t = transvection_matrix(Transvection(1, 2, x), r, False, F5, 1)
print("orthogonal:", is_orthogonal(t))
print("T_{1,2}(x) == T_{-2,-1}(-x):", t == transvection_matrix(Transvection(-2, -1, -x), r, False, F5, 1))

# H sends GL transvections to orthogonal ones
g = gl_word_product([(1, 2, x)], r, F5, 1)
print("H(t_12(x)) == T_12(x):", hyperbolic_embed(g) == t)

# mu for a non-unit s, rebuilt from elementary transvections
u = [parse_poly("x1 + 1", F5, 1), parse_poly("2", F5, 1)]
v = [parse_poly("3*x1", F5, 1), parse_poly("1", F5, 1)]
s = parse_poly("x1^2 + 4", F5, 1)
glw = mu_word(u, s, v)
print(f"mu_word has {len(glw)} factors (at most {7 * r - 3})")
print("product matches mu:", gl_word_product(glw, r, F5, 1) == mu(u, s, v))
