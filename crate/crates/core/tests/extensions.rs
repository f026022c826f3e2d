use detrep::extensions::{
    a_module_classes, a_module_test, build_extension, cocycle_space, extend_ulrich, presentation_of, ulrich_check,
    AModuleTest, Which,
};
use detrep::{Error, Model};

/// Iterated extensions on a scroll with a 3-dimensional class space: r·deg X generators.
#[test]
fn iterated_extensions_on_the_cubic_scroll_in_p5() {
    let m = Model::linear(2, 2, 5, 1).unwrap();
    for rank in 1..=4 {
        let (out, ext) = extend_ulrich(&m, rank, 7).unwrap();
        assert_eq!(out.a_module_class_dim, 3);
        assert_eq!(out.ulrich.generators, 3 * rank);
        assert!(out.ulrich.numerically_consistent);
        assert_eq!(out.a_module, AModuleTest::Pass);
        assert_eq!(ext.assembled.gens.rank(), 3 * rank);
    }
    assert!(matches!(extend_ulrich(&m, 5, 7), Err(Error::NotEnoughClasses { requested: 4, available: 3 })));
}

#[test]
fn quartic_scroll_has_two_a_classes() {
    let m = Model::linear(2, 3, 5, 1).unwrap();
    let sub = presentation_of(&m, Which::Mdual(1)).unwrap();
    let quot = presentation_of(&m, Which::Sym(3, 0)).unwrap();
    let space = cocycle_space(&quot, &sub).unwrap();
    let a = a_module_classes(&space, &quot, &sub, &m).unwrap();
    assert!(space.dim >= a.len());
    assert_eq!(a.len(), 2);
}

/// A class outside the A-module subspace produces an extension that I does not kill.
#[test]
fn r_level_classes_can_fail_the_a_module_test() {
    let m = Model::linear(2, 2, 4, 1).unwrap();
    let sub = presentation_of(&m, Which::Mdual(1)).unwrap();
    let quot = presentation_of(&m, Which::Sym(2, 0)).unwrap();
    let space = cocycle_space(&quot, &sub).unwrap();
    let a = a_module_classes(&space, &quot, &sub, &m).unwrap();
    assert_eq!((space.dim, a.len()), (16, 1));
    let failing = space
        .classes
        .iter()
        .find(|z| {
            let ext = build_extension(&space, &sub, &quot, &[z.to_vec()]).unwrap();
            a_module_test(&ext.assembled, &m, 7).unwrap() == AModuleTest::Fail
        })
        .expect("some R-level class is not an A-module extension");
    // Still an extension of graded modules: Hilbert functions add up.
    let ext = build_extension(&space, &sub, &quot, &[failing.clone()]).unwrap();
    assert!(ulrich_check(&ext, 3, (0, 7)).additivity);
}

#[test]
fn zero_class_is_split() {
    let m = Model::linear(2, 2, 4, 1).unwrap();
    let sub = presentation_of(&m, Which::Mdual(1)).unwrap();
    let quot = presentation_of(&m, Which::Sym(2, 0)).unwrap();
    let space = cocycle_space(&quot, &sub).unwrap();
    let zero = vec![Default::default(); space.coordinate_dim()];
    let ext = build_extension(&space, &sub, &quot, &[zero]).unwrap();
    assert!(ext.split);
    assert_eq!(a_module_test(&ext.assembled, &m, 7).unwrap(), AModuleTest::Pass);
    let r = ulrich_check(&ext, 3, (0, 7));
    assert!(r.numerically_consistent);
}

#[test]
fn dependent_classes_are_refused() {
    let m = Model::linear(2, 2, 5, 1).unwrap();
    let sub = presentation_of(&m, Which::Mdual(1)).unwrap();
    let quot = presentation_of(&m, Which::Sym(2, 0)).unwrap();
    let space = cocycle_space(&quot, &sub).unwrap();
    let z = space.classes[0].clone();
    assert_eq!(build_extension(&space, &sub, &quot, &[z.clone(), z]).unwrap_err(), Error::DependentCocycles);
}

#[test]
fn small_degree_bound_is_undecided() {
    let m = Model::linear(2, 2, 4, 1).unwrap();
    let (out, _) = extend_ulrich(&m, 2, 1).unwrap();
    assert!(matches!(out.a_module, AModuleTest::Undecided { needed_degree: 2 }));
}

#[test]
fn presentation_json_has_the_block_shape() {
    let m = Model::linear(2, 2, 4, 1).unwrap();
    let (_, ext) = extend_ulrich(&m, 2, 7).unwrap();
    let v = ext.to_json();
    assert_eq!(v["gens_twists"].as_array().unwrap().len(), 6);
    // [[p1, ξ], [0, d1]]: 6 + 6 relation columns
    assert_eq!(v["relations"]["source_twists"].as_array().unwrap().len(), 12);
}
