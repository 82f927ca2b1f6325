use cotangent::algebra::{FiniteModule, PresentedAlgebra};
use cotangent::ls::{build_ls, t_dimensions, Cochains};
use cotangent::Field;
use proptest::prelude::*;

const TERMS: [&str; 9] = ["x^2", "x*y", "y^2", "x^3", "y^3", "x^2*y", "x^2 - y^2", "x*y + y^2", "x^2 + x*y*y"];

fn algebra() -> impl Strategy<Value = PresentedAlgebra> {
    (prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Rational)], prop::sample::subsequence(TERMS.to_vec(), 1..4))
        .prop_map(|(f, rels)| PresentedAlgebra::over_field(f, &["x", "y"], &rels).expect("valid relations"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_compose_to_zero(b in algebra()) {
        let cochains = Cochains::new(build_ls(&b).unwrap(), FiniteModule::residue_field(&b)).unwrap();
        prop_assert!(cochains.composite().is_zero());
    }

    #[test]
    fn reordering_variables_and_relations_keeps_dimensions(b in algebra(), swap in any::<bool>()) {
        let vars = if swap { vec![1, 0] } else { vec![0, 1] };
        let rels: Vec<usize> = (0..b.relations().len()).rev().collect();
        let c = b.permuted(&vars, &rels);
        prop_assert_eq!(t_dimensions(&b, &FiniteModule::residue_field(&b)).unwrap(), t_dimensions(&c, &FiniteModule::residue_field(&c)).unwrap());
    }

    #[test]
    fn derivations_into_the_residue_field_are_the_cotangent_space(b in algebra()) {
        let d = t_dimensions(&b, &FiniteModule::residue_field(&b)).unwrap();
        prop_assert_eq!(d[0], 2);
    }
}

#[test]
fn bundled_polynomials_survive_printing_and_parsing() {
    use cotangent::cli::problem::ProblemFile;
    use cotangent::corpus::BUNDLED;
    for (name, _, text) in BUNDLED {
        let file = ProblemFile::from_json(text).unwrap();
        let f = file.field(None).unwrap();
        for def in file.algebras.values() {
            let b = PresentedAlgebra::parse(f, &strs(&def.base_vars), &strs(&def.base_relations), &strs(&def.vars), &strs(&def.relations)).unwrap();
            for r in b.all_relations() {
                let printed = b.format(&r);
                assert_eq!(b.parse_element(&printed).unwrap(), r, "{name}: {printed}");
            }
        }
    }
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}
