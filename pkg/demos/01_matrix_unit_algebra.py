"""Tour of the sparse matrix-unit algebra on tensor stages.

Elements of a stage M_{a_1} (x) ... (x) M_{a_n} are linear combinations
of elementary tensors of matrix units E_{jk}, stored sparsely by their
integer index data.  This script builds a few, multiplies them, and
cross-checks everything against dense numpy matrices.
"""

import numpy as np

from uhfkron import (
    elem_tensor,
    from_dense,
    identity,
    matrix_unit,
    random_element,
    to_dense,
)


def main():
    print("=== single-factor units, the product rule ===")
    e12 = matrix_unit(3, 1, 2)
    e23 = matrix_unit(3, 2, 3)
    e22 = matrix_unit(3, 2, 2)
    print("E_12 E_23 =", dict((e12 * e23).terms))    # = E_13
    print("E_12 E_22 =", dict((e12 * e22).terms))    # = E_12
    print("E_23 E_12 =", dict((e23 * e12).terms))    # = 0 (inner indices differ)

    print()
    print("=== a two-slot element and its dense matrix ===")
    x = elem_tensor(matrix_unit(2, 1, 2), matrix_unit(2, 2, 1))
    print("x = E_12 (x) E_21 over signature", x.sig.dims)
    print(to_dense(x).real)
    print("the single 1 sits at row 2, column 3 (1-based): the row index")
    print("is 2*(1-1)+2 = 2 and the column index is 2*(2-1)+1 = 3.")

    print()
    print("=== algebra operations against the dense oracle ===")
    a = random_element((2, 3), rng=1, n_terms=5)
    b = random_element((2, 3), rng=2, n_terms=5)
    print("product matches dense multiply:",
          np.allclose(to_dense(a * b), to_dense(a) @ to_dense(b)))
    print("adjoint matches conjugate transpose:",
          np.allclose(to_dense(a.adjoint()), to_dense(a).conj().T))
    print("identity element is the identity matrix:",
          np.allclose(to_dense(identity((2, 3))), np.eye(6)))

    print()
    print("=== round trip through a dense matrix ===")
    back = from_dense(to_dense(a), (2, 3))
    print("from_dense(to_dense(a)) == a:", back.allclose(a))


if __name__ == "__main__":
    main()
