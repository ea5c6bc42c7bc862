use super::{Poly, Rational};

/// Newton interpolation in variable index `var`: the unique polynomial of
/// degree < `nodes.len()` in `var` taking `values[k]` at `var = nodes[k]`.
/// The values must share one variable list and not involve `var`.
pub fn interpolate(var: usize, nodes: &[Rational], values: &[Poly]) -> Poly {
    assert_eq!(nodes.len(), values.len());
    assert!(!values.is_empty(), "interpolation needs at least one node");
    let vars = values[0].vars_arc().clone();
    let values: Vec<Poly> = values
        .iter()
        .map(|v| v.align_to(&vars).expect("values share a variable list"))
        .collect();
    let n = nodes.len();
    // divided differences in place
    let mut coef = values;
    for j in 1..n {
        for i in (j..n).rev() {
            let diff = &coef[i] - &coef[i - 1];
            let denom = &nodes[i] - &nodes[i - j];
            coef[i] = diff.scale(&denom.recip());
        }
    }
    let x = coef[0].var_like(var);
    let mut acc = coef[n - 1].clone();
    for k in (0..n - 1).rev() {
        let shift = &x - &x.const_like(nodes[k].clone());
        acc = &(&acc * &shift) + &coef[k];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn recovers_bivariate() {
        let p: Poly = Poly::parse("3*x^2*y - x*y^2 + 5/7*y - 2").unwrap();
        let yi = p.index_of("y").unwrap();
        let nodes: Vec<Rational> = (0..3).map(rat).collect();
        let values: Vec<Poly> = nodes.iter().map(|t| p.substitute_idx(yi, t)).collect();
        assert_eq!(interpolate(yi, &nodes, &values), p);
    }
}
