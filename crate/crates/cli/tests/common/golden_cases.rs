//! Invocations covered by the golden files, as (name, arguments). Arguments ending in `.json`
//! name files under `tests/golden/input`.

pub const CASES: &[(&str, &[&str])] = &[
    ("discriminant_z2", &["discriminant", "z_2.json"]),
    ("discriminant_degenerate", &["discriminant", "degenerate_c2.json"]),
    ("discriminant_a2", &["discriminant", "a2.json"]),
    ("discriminant_zero", &["discriminant", "zero.json"]),
    ("gauss_zero_z3", &["gauss", "z3_zero.json"]),
    ("gauss_z2_quarter", &["gauss", "z2_quarter.json"]),
    ("gauss_hyperbolic", &["gauss", "hyperbolic.json"]),
    ("invariants_mixed", &["invariants", "mixed.json"]),
    ("invariants_hyperbolic", &["invariants", "hyperbolic.json"]),
    ("isomorphic_gauss", &["isomorphic", "z2_quarter.json", "z2_three_quarters.json"]),
    ("isomorphic_self", &["isomorphic", "--witness", "z2_quarter.json", "z2_quarter.json"]),
    ("isomorphic_acted", &["isomorphic", "--witness", "hyperbolic.json", "hyperbolic_acted.json"]),
    ("isomorphic_pairing", &["isomorphic", "diagonal_halves.json", "hyperbolic.json"]),
    ("isomorphic_absorbed", &["isomorphic", "--witness", "absorbed_a.json", "absorbed_b.json"]),
    ("stable_stabilized", &["stable-equivalent", "z_2.json", "z_2_stabilized.json"]),
    ("stable_sign", &["stable-equivalent", "z_2.json", "z_minus2.json"]),
    ("stable_content", &["stable-equivalent", "degenerate_c2.json", "degenerate_c4.json"]),
    ("stable_kernel_sign", &["stable-equivalent", "degenerate_c2.json", "degenerate_cm2.json"]),
    ("solve_char_shift", &["solve-char", "z_2.json", "z2_three_quarters.json"]),
    ("solve_char_canonical", &["solve-char", "z_2.json", "z2_quarter.json"]),
    ("solve_char_degenerate", &["solve-char", "degenerate_canonical.json", "degenerate_quad.json"]),
    ("solve_char_mismatch", &["solve-char", "z_2.json", "z3_zero.json"]),
    ("refinements_z2", &["refinements", "z2_pairing.json"]),
    ("refinements_z2z4", &["refinements", "z2z4_pairing.json"]),
    ("error_char_parity", &["discriminant", "bad_char.json"]),
    ("error_not_symmetric", &["discriminant", "not_symmetric.json"]),
    ("error_inconsistent", &["gauss", "inconsistent.json"]),
    ("error_malformed", &["gauss", "malformed.json"]),
    ("error_size_gauss", &["gauss", "--max-group-order", "100", "large.json"]),
    ("error_size_search", &["isomorphic", "large.json", "large.json"]),
    ("explicit_format", &["--format", "json", "gauss", "z2_quarter.json"]),
];
