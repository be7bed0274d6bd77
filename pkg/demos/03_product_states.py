"""Product states, their Kronecker product, and the order-sensitivity of
the non-symmetric tensor product.

A product state evaluates elementary tensors of units to products of
density-matrix entries.  Two states over signatures a and b combine in
two equivalent ways: Kronecker-multiply their densities factor by factor,
or evaluate through the coproduct.  The two computations are independent
in this package, and this script confirms they agree — then shows that
swapping the factors changes the result, with trace distance 2.
"""

from uhfkron import (
    DensityFactor,
    ProductStateTrunc,
    matrix_unit,
    parse_element,
    random_density,
    state_boxtimes,
    state_evaluate,
    state_tensor_phi_eval,
    state_trace_distance,
)


def main():
    print("=== evaluation convention ===")
    T = DensityFactor([[0.6, 0.2j], [-0.2j, 0.4]])
    S = ProductStateTrunc([T])
    print("omega(E_12) =", state_evaluate(S, matrix_unit(2, 1, 2)),
          " (the (2,1) entry of T)")
    print("omega(E_21) =", state_evaluate(S, matrix_unit(2, 2, 1)),
          " (the (1,2) entry of T)")

    print()
    print("=== two independent routes to the product of states ===")
    A = ProductStateTrunc([random_density(2, seed=1), random_density(3, seed=2)])
    B = ProductStateTrunc([random_density(2, seed=3), random_density(2, seed=4)])
    boxed = state_boxtimes(A, B)
    x = parse_element("E[4](2,3) (x) E[6](5,1)")
    through_coproduct = state_tensor_phi_eval(A, B, x)
    through_densities = state_evaluate(boxed, x)
    print("coproduct route:  ", through_coproduct)
    print("density route:    ", through_densities)
    print("difference:       ", abs(through_coproduct - through_densities))

    print()
    print("=== the witness pair: order matters ===")
    P = ProductStateTrunc([DensityFactor.diagonal([1, 0])])
    Q = ProductStateTrunc([DensityFactor.diagonal([0, 1])])
    w = parse_element("E[4](2,2) - E[4](3,3)")
    print("(P, Q) order:", state_evaluate(state_boxtimes(P, Q), w))
    print("(Q, P) order:", state_evaluate(state_boxtimes(Q, P), w))

    print()
    print("=== the separation persists at every level ===")
    for level in (1, 2, 3):
        PL = ProductStateTrunc([DensityFactor.diagonal([1, 0])] * level)
        QL = ProductStateTrunc([DensityFactor.diagonal([0, 1])] * level)
        d = state_trace_distance(state_boxtimes(PL, QL),
                                 state_boxtimes(QL, PL))
        print(f"  level {level}: trace distance = {d:.12f}")


if __name__ == "__main__":
    main()
