use bec_core::code::{Code, ConvexityKind};
use bec_core::families::{dataset, lookup, lookup_code, spiral, Family, FamilySpec};
use bec_core::lattice::embed;

fn c(s: &str) -> Code {
    s.parse().unwrap()
}

#[test]
fn every_family_id_parses_back() {
    for family in Family::ALL {
        assert_eq!(family.id().parse::<Family>().unwrap(), family);
    }
}

#[test]
fn oblate_triangle_switches_to_convex_only_at_two() {
    let o3 = |m| FamilySpec::new(Family::OblateTriangle, vec![m]).unwrap();
    assert_eq!(o3(2).generate().classify().kind, ConvexityKind::Convex);
    for m in 3..=7 {
        let code = o3(m).generate();
        assert_eq!(code.convexity_deficit().value(), Some(1), "O3({m})");
        assert_eq!(embed(&code).unwrap().hexagons() as u32, o3(m).expected_h());
    }
}

#[test]
fn wrong_arity_is_rejected() {
    assert!(FamilySpec::new(Family::Chevron, vec![3]).is_err());
    assert!(FamilySpec::new(Family::Linear, vec![1]).is_err());
}

#[test]
fn dataset_rows_agree_with_lookup() {
    for row in dataset() {
        assert_eq!(lookup(&row.name).unwrap().name, row.name);
        assert_eq!(lookup_code(&row.bec.reverse().rotate(3)).unwrap().bec.canonical(), row.bec.canonical());
    }
    assert_eq!(lookup("coronene").unwrap().bec, c("333333"));
    assert_eq!(lookup("1535").unwrap().name, "phenanthrene");
    assert!(lookup("not a benzenoid").is_err());
}

#[test]
fn spiral_six_is_printed_code() {
    assert_eq!(spiral(6).unwrap(), c("5333252111"));
}
