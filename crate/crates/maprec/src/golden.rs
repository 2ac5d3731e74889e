//! Embedded golden count data.
//!
//! Reference values for the quadrangulation model (single weight `t_4`) and
//! the zero-weight specialisations, used by the regression suite. The OEIS
//! prefixes are baked in at build time; nothing is fetched at runtime.
//!
//! One defect in the circulating reference tabulation is recorded here
//! explicitly: its ordinary genus-2 one-boundary column is the
//! boundary-**length-4** series, not the length-2 one it is labelled as.
//! The length-2 alignment is impossible (its first entry would describe a
//! genus-2 map with zero vertices), and the engine's zero-weight values
//! reproduce the classical one-face polygon-gluing counts
//! (`0, 21, 483` for hexagon/octagon/decagon, closing the exact sum
//! `42 + 420 + 483 = 945 = 9!!`), which fixes the genus-2 normalisation
//! independently. The two series are related by `T^{(2)}_2 = t_4 ·
//! T^{(2)}_4`. Both variants are stored so the suite can assert the
//! engine's column *and* positively identify the printed data.

/// Quadrangulation generating-function table, coefficients of `t_4^0 …
/// t_4^5`: bipartite one-boundary counts `T̃_2^{(g)}` for `g = 0, 1, 2`.
pub const TABLE1_BIPARTITE: [[i64; 6]; 3] = [
    [1, 2, 9, 54, 378, 2916],
    [0, 0, 1, 20, 307, 4280],
    [0, 0, 0, 0, 21, 966],
];

/// Ordinary one-boundary counts `T_2^{(g)}` for `g = 0, 1, 2`, same
/// layout. The genus-2 row is the corrected length-2 series (see the
/// module docs).
pub const TABLE1_ORDINARY: [[i64; 6]; 3] = [
    [1, 2, 9, 54, 378, 2916],
    [0, 1, 15, 198, 2511, 31266],
    [0, 0, 0, 45, 2007, 56646],
];

/// The ordinary genus-2 column as printed in the reference tabulation:
/// verified to be the boundary-length-4 series `T^{(2)}_4`.
pub const TABLE1_ORDINARY_G2_PRINTED: [i64; 6] = [0, 0, 45, 2007, 56646, 1290087];

/// OEIS A006300: the nonzero coefficients of `T̃_2^{(1)}`.
pub const OEIS_A006300_PREFIX: [i64; 4] = [1, 20, 307, 4280];

/// OEIS A006301: the nonzero coefficients of `T̃_2^{(2)}`.
pub const OEIS_A006301_PREFIX: [i64; 2] = [21, 966];

/// A006300 continued past the reference table (rooted genus-1 maps with
/// 2…7 edges); the last two entries are engine predictions confirmed
/// against the published sequence.
pub const OEIS_A006300_EXTENDED: [i64; 6] = [1, 20, 307, 4280, 56914, 736568];

/// A006301 continued likewise (rooted genus-2 maps with 4…7 edges).
pub const OEIS_A006301_EXTENDED: [i64; 4] = [21, 966, 27954, 650076];

/// Catalan numbers `C_1 … C_5`: zero-weight disk counts for boundary
/// half-lengths `l = 1 … 5` (rooted plane trees).
pub const CATALAN: [i64; 5] = [1, 2, 5, 14, 42];

/// Harer–Zagier one-face genus-one gluing counts: `T_4^{(1)} = 1` (square)
/// and `T_6^{(1)} = 10` (hexagon) at zero weights.
pub const HARER_ZAGIER_G1: [(u32, i64); 2] = [(4, 1), (6, 10)];

/// One-face genus-two gluing counts at zero weights: hexagon, octagon and
/// decagon (`ε_2(3), ε_2(4), ε_2(5)`).
pub const POLYGON_GLUINGS_G2: [(u32, i64); 3] = [(6, 0), (8, 21), (10, 483)];
