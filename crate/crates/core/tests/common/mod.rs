use divisible_sets::constructions::ConstructionRecipe;

/// Desk-scale recipes over GF(2) and GF(3) with the divisibility exponent
/// each one is guaranteed to reach.
pub fn catalogue() -> Vec<(ConstructionRecipe, u32)> {
    use ConstructionRecipe::*;
    let mut out = Vec::new();
    for (q, k, s) in [
        (2, 1, 3),
        (2, 1, 5),
        (2, 2, 2),
        (2, 2, 3),
        (2, 3, 2),
        (3, 1, 3),
        (3, 2, 2),
        (3, 2, 3),
    ] {
        out.push((Spread { q, k, s }, ((s - 1) * k) as u32));
    }
    for (q, k, r) in [
        (2, 1, 1),
        (2, 1, 3),
        (2, 2, 1),
        (2, 2, 2),
        (2, 2, 3),
        (2, 3, 1),
        (3, 1, 1),
        (3, 1, 2),
        (3, 2, 1),
        (3, 2, 2),
    ] {
        out.push((LiftedMrd { q, k, r }, r as u32));
    }
    let sum = |a: ConstructionRecipe, b: ConstructionRecipe| DirectSum {
        left: Box::new(a),
        right: Box::new(b),
    };
    // a direct sum keeps the smaller of the two exponents
    out.push((sum(Spread { q: 2, k: 2, s: 3 }, LiftedMrd { q: 2, k: 2, r: 3 }), 3));
    out.push((sum(Spread { q: 2, k: 2, s: 2 }, LiftedMrd { q: 2, k: 2, r: 1 }), 1));
    out.push((sum(Spread { q: 3, k: 2, s: 2 }, LiftedMrd { q: 3, k: 2, r: 1 }), 1));
    out.push((sum(Spread { q: 2, k: 1, s: 3 }, Spread { q: 2, k: 1, s: 3 }), 2));
    out.push((sum(LiftedMrd { q: 3, k: 1, r: 2 }, Spread { q: 3, k: 1, s: 3 }), 2));
    out
}
