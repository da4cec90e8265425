use higher_brackets::algebra::{Element, Graded};
use higher_brackets::derived::{positive_basis, DerivedStructure};
use higher_brackets::dgla::DglaDocument;
use higher_brackets::linfinity::multisets;
use higher_brackets::presets::{finite_preset, generate_preset, preset_document, FINITE_PRESETS};

#[test]
fn shipped_documents_match_generated_algebras() {
    for name in FINITE_PRESETS {
        let generated = DglaDocument::from_dgla(&generate_preset(name).unwrap()).to_json();
        assert_eq!(
            generated.trim_end(),
            preset_document(name).unwrap().trim_end(),
            "{name}"
        );
    }
}

#[test]
fn documents_round_trip() {
    for name in FINITE_PRESETS {
        let d = finite_preset(name).unwrap();
        let again = DglaDocument::from_json(&DglaDocument::from_dgla(&d).to_json())
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(
            DglaDocument::from_dgla(&again).to_json(),
            DglaDocument::from_dgla(&d).to_json()
        );
    }
}

#[test]
fn pruned_symmetrization_matches_full_sum() {
    for name in ["heisenberg-pq", "sl2-pq", "sl2-pqr"] {
        let d = finite_preset(name).unwrap();
        let s = DerivedStructure::new(&d);
        let window = positive_basis(&d);
        for arity in 2..=4 {
            for idx in multisets(window.len(), arity).step_by(7) {
                let args: Vec<_> = idx
                    .iter()
                    .map(|&i| Element::basis(window[i].clone()))
                    .collect();
                let degrees: Vec<i64> = idx.iter().map(|&i| window[i].degree()).collect();
                assert_eq!(
                    s.symmetrized_nested(&args, &degrees),
                    s.symmetrized_nested_unpruned(&args, &degrees),
                    "{name} {idx:?}"
                );
            }
        }
    }
}
