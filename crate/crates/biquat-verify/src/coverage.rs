//! Map from every numbered relation, table and cited footnote to the suites
//! exercising it, or to the reason it is not checked.

use std::fmt::Write as _;

use serde::Serialize;

use crate::report::Format;

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub anchor: &'static str,
    pub suites: &'static [&'static str],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_of_scope: Option<&'static str>,
}

const fn e(anchor: &'static str, suites: &'static [&'static str]) -> Entry {
    Entry { anchor, suites, out_of_scope: None }
}

const fn oos(anchor: &'static str, reason: &'static str) -> Entry {
    Entry { anchor, suites: &[], out_of_scope: Some(reason) }
}

pub const TABLE: &[Entry] = &[
    e("Eq. (1)", &["eq1.minkowski.1_2p", "eq1.minkowski.1_2m", "eq1.minkowski.1"]),
    e("Eq. (2)", &["eq2.unitary_boost.1_2p", "eq2.unitary_boost.1_2m", "eq2.unitary_boost.1"]),
    e("Eq. (3)", &["eq3.unitary.3_2", "eq3.minkowski_violation.3_2"]),
    e("Eq. (4)", &["eq4.half_rotation"]),
    e("Eq. (5)", &["eq5.rodrigues"]),
    e("Eq. (6)", &["eq6.periodicity"]),
    oos("Eq. (7)", "two-component Dirac equation in Pauli-matrix gradient notation; its biquaternion forms are checked as (9') and (9'')"),
    e("Eq. (8')", &["eq8.peirce_round_trip", "eq8.spinor_embedding"]),
    e("Eq. (8'')", &["eq8.peirce_round_trip", "eq8.spinor_embedding"]),
    e("Eq. (9')", &["eq9.two_component"]),
    e("Eq. (9'')", &["eq9.two_component"]),
    e("Eq. (10)", &["eq10.nabla_selection", "eq10.lanczos_plane_waves"]),
    e("Eq. (11)", &["eq11.doublet"]),
    e("Eq. (12)", &["eq12.nullspace", "eq12.klein_gordon"]),
    e("Eq. (13)", &["eq13.vector_law"]),
    e("Eq. (14)", &["eq14.pi_bar"]),
    e("Eq. (15)", &["eq15.gauge_covariance"]),
    e("Eq. (16)", &["eq16.current_conservation"]),
    e("Eq. (17)", &["eq17.index_lemmas"]),
    e("Eq. (18')", &["eq18.free_system"]),
    e("Eq. (18'')", &["eq18.constraint_counting"]),
    e("Eq. (18''')", &["eq18.constraint_counting", "eq18.free_system"]),
    e("Eq. (19)", &["eq17.index_lemmas"]),
    e("Eq. (20)", &["eq20.rs_current"]),
    e("Eq. (21)", &["eq21.commutator", "eq21.stated_commutator"]),
    e("Eq. (22)", &["eq22.dual_tensor"]),
    e("Eq. (23)", &["eq23.derivation", "rs.extra_constraint"]),
    e("Eq. (24)", &["eq24.free_reduction"]),
    e("Eq. (25)", &["eq25.contraction", "eq25.stated_projection"]),
    e("Eq. (26)", &["eq26.contraction", "eq26.stated"]),
    e("Eq. (27)", &["eq27.g1"]),
    e("Eq. (28)", &["eq28.g1"]),
    e("Eq. (29)", &["eq29.g1", "eq29.stated"]),
    e("Eq. (30)", &["eq30.g1", "eq30.stated"]),
    e("Eq. (31)", &["eq31.g1"]),
    e("Eq. (32)", &["eq32.g1", "eq32.stated"]),
    e("Eq. (33)", &["eq45.divergence", "eq46.divergence", "eq39.lagrangian"]),
    e("Eq. (34)", &["eq34.current_law"]),
    e("Eq. (35)", &["eq35.current_divergence"]),
    e("Eq. (36)", &["eq36.density"]),
    e("Eq. (37)", &["eq34.current_law"]),
    e("Eq. (38)", &["eq38.six_vector"]),
    e("Eq. (39)", &["eq39.invariant_scalar", "eq39.lagrangian"]),
    e("Eq. (40)", &["eq40.amplitude"]),
    e("Eq. (41)", &["eq41.singular_pairs", "eq41.s_invariance"]),
    e("Eq. (42)", &["eq41.singular_pairs", "eq41.s_invariance"]),
    e("Eq. (43)", &["eq41.singular_pairs", "eq43.v_four_vector"]),
    e("Eq. (44)", &["eq41.singular_pairs", "eq43.v_four_vector"]),
    e("Eq. (45)", &["eq45.divergence", "eq45.stated"]),
    e("Eq. (46)", &["eq46.divergence", "eq46.stated"]),
    e("Eq. (47)", &["eq47.j3"]),
    e("Eq. (48)", &["eq48.nu_rotation_closure", "eq48.two_boost", "eq48.eigenstates", "eq48.scalar_products"]),
    e("Eq. (A.1)", &["a1.hamilton_table", "alg.associativity"]),
    e("Eq. (A.2)", &["a2.structure_constants"]),
    e("Eq. (A.3)", &["a3.conjugations"]),
    e("Eq. (A.4)", &["a4.conjugation_laws"]),
    e("Eq. (A.5)", &["a5.spinor_law"]),
    e("Eq. (A.6)", &["a6.four_vector"]),
    e("Eq. (A.7)", &["a7.six_vector"]),
    e("Eq. (A.8')", &["a8.proca_bivector"]),
    e("Eq. (A.8'')", &["a8.proca_tensor", "a8.maxwell"]),
    e("Table 1", &["table1.su2.*", "table1.casimir.*", "table1.eigenstates.*"]),
    e("Table 2", &["table2.equivariance.*", "table2.subspaces.*", "table2.group_rows"]),
    e("Footnote 6", &["fn6.norm"]),
    e("Footnote 7", &["fn7.idempotents"]),
    e("Footnote 8", &["fn8.boosts"]),
    e("Footnote 13", &["a8.maxwell"]),
];

/// Every numbered relation label that must appear in [`TABLE`].
pub fn required_anchors() -> Vec<String> {
    let mut v: Vec<String> = Vec::new();
    for n in 1..=48 {
        match n {
            8 | 9 => v.extend([format!("Eq. ({n}')"), format!("Eq. ({n}'')")]),
            18 => v.extend(["Eq. (18')", "Eq. (18'')", "Eq. (18''')"].map(String::from)),
            _ => v.push(format!("Eq. ({n})")),
        }
    }
    for n in 1..=7 {
        v.push(format!("Eq. (A.{n})"));
    }
    v.extend(["Eq. (A.8')", "Eq. (A.8'')"].map(String::from));
    v
}

pub fn render(format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(TABLE).expect("static table");
            s.push('\n');
            s
        }
        Format::Md => {
            let mut out = String::from("| anchor | suites | note |\n|---|---|---|\n");
            for en in TABLE {
                let _ = writeln!(out, "| {} | {} | {} |", en.anchor, en.suites.join(", "), en.out_of_scope.map_or(String::new(), |r| format!("out of scope: {r}")));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_label_listed_once() {
        for a in required_anchors() {
            assert_eq!(TABLE.iter().filter(|e| e.anchor == a).count(), 1, "{a}");
        }
    }

    #[test]
    fn entries_have_suites_or_reason() {
        for en in TABLE {
            assert!(en.suites.is_empty() != en.out_of_scope.is_none(), "{}", en.anchor);
        }
    }
}
