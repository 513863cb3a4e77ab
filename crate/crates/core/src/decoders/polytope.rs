//! Euclidean projection onto the parity polytope, the convex hull of the
//! even-weight vectors of `{0,1}^d`.
//!
//! Inside the unit cube the polytope is cut out by the odd-set facets
//! `Σ_{i∈S} u_i - Σ_{i∉S} u_i ≤ |S| - 1` for `|S|` odd. For a point of the
//! cube at most one of them can be violated: the one whose `S` is the
//! rounded point, with the coordinate nearest 1/2 toggled if needed to make
//! `|S|` odd. When that facet is violated, the projection lies on it.

/// Projects `v` onto the parity polytope of dimension `v.len()`, writing
/// the result to `out`.
///
/// # Panics
///
/// Panics if the slices differ in length or are shorter than 2.
pub fn project_parity_polytope(v: &[f64], out: &mut [f64]) {
    let d = v.len();
    assert!(d >= 2, "parity polytope needs dimension >= 2");
    assert_eq!(out.len(), d, "output length mismatch");

    let mut odd = false;
    let mut nearest = 0;
    let mut nearest_dist = f64::INFINITY;
    for (i, (&vi, o)) in v.iter().zip(out.iter_mut()).enumerate() {
        let u = vi.clamp(0.0, 1.0);
        *o = u;
        odd ^= u > 0.5;
        let dist = (u - 0.5).abs();
        if dist < nearest_dist {
            nearest_dist = dist;
            nearest = i;
        }
    }
    // clamping does not move a coordinate across 1/2, so membership can be
    // read off `v` after `out` is overwritten
    let flip = if odd { d } else { nearest };
    let in_set = |i: usize| (v[i] > 0.5) ^ (i == flip);

    // In mirrored coordinates t_i = 1 - u_i (i ∈ S), u_i (i ∉ S) the facet
    // reads Σ t_i ≥ 1.
    let slack: f64 = out
        .iter()
        .enumerate()
        .map(|(i, &u)| if in_set(i) { 1.0 - u } else { u })
        .sum();
    if slack >= 1.0 {
        return;
    }

    for i in 0..d {
        out[i] = if in_set(i) { 1.0 - v[i] } else { v[i] };
    }
    let beta = capped_simplex_shift(out);
    for i in 0..d {
        let ti = (out[i] + beta).clamp(0.0, 1.0);
        out[i] = if in_set(i) { 1.0 - ti } else { ti };
    }
}

/// The `β` with `Σ clamp(t_i + β, 0, 1) = 1`.
///
/// The left-hand side is continuous, nondecreasing and piecewise linear,
/// so Newton steps (safeguarded by bisection on a shrinking bracket) reach
/// the root exactly once they land on its linear piece.
fn capped_simplex_shift(t: &[f64]) -> f64 {
    let (mut lo, mut hi) = t
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(-x), hi.max(1.0 - x)));
    // lo = -max t gives sum 0 < 1; hi = 1 - min t gives sum >= 1
    let mut beta = ((1.0 - t.iter().sum::<f64>()) / t.len() as f64).clamp(lo, hi);
    for _ in 0..200 {
        let (mut sum, mut active) = (0.0, 0usize);
        for &x in t {
            let y = (x + beta).clamp(0.0, 1.0);
            sum += y;
            active += (y > 0.0) as usize & (y < 1.0) as usize;
        }
        let excess = sum - 1.0;
        if excess.abs() <= 1e-14 {
            return beta;
        }
        if excess < 0.0 {
            lo = beta;
        } else {
            hi = beta;
        }
        let mut next = if active > 0 { beta - excess / active as f64 } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == beta || hi - lo <= f64::EPSILON * (1.0 + hi.abs()) {
            return next;
        }
        beta = next;
    }
    beta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn project(v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        project_parity_polytope(v, &mut out);
        out
    }

    #[test]
    fn centroid_is_fixed() {
        let v = [0.5; 5];
        assert_eq!(project(&v), v.to_vec());
    }

    #[test]
    fn two_dimensional_case() {
        let u = project(&[1.0, 0.0]);
        assert!((u[0] - 0.5).abs() < 1e-15 && (u[1] - 0.5).abs() < 1e-15, "{u:?}");
    }

    #[test]
    fn odd_vertex_goes_to_facet() {
        // (1,1,1) is nearest to the three even vertices of weight 2 at
        // equal distance: the projection is their centroid.
        let u = project(&[1.0, 1.0, 1.0]);
        for x in u {
            assert!((x - 2.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn even_rounding_can_still_be_infeasible() {
        // rounds to (1,1,0) but the facet through S = {0,1,2} is violated
        let u = project(&[1.0, 1.0, 0.5]);
        assert!(u[0] + u[1] + u[2] <= 2.0 + 1e-12);
        assert!((u[0] - 5.0 / 6.0).abs() < 1e-12, "{u:?}");
        assert!((u[2] - 1.0 / 3.0).abs() < 1e-12, "{u:?}");
    }

    #[test]
    fn shift_solves_capped_simplex() {
        let t = [0.1, -0.4, 0.2, 0.05];
        let beta = capped_simplex_shift(&t);
        let total: f64 = t.iter().map(|&x| (x + beta).clamp(0.0, 1.0)).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }
}
