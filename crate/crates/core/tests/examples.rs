//! Runs every example in-process.

#[allow(dead_code)]
mod series_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/series_arithmetic.rs"));

    #[test]
    fn runs() {
        run_example().expect("series_arithmetic");
    }
}

#[allow(dead_code)]
mod canonical_diagrams {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/canonical_diagrams.rs"));

    #[test]
    fn runs() {
        run_example().expect("canonical_diagrams");
    }
}

#[allow(dead_code)]
mod wheels_and_gluing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wheels_and_gluing.rs"));

    #[test]
    fn runs() {
        run_example().expect("wheels_and_gluing");
    }
}

#[allow(dead_code)]
mod weight_system {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weight_system.rs"));

    #[test]
    fn runs() {
        run_example().expect("weight_system");
    }
}

#[allow(dead_code)]
mod gaussian_integral {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gaussian_integral.rs"));

    #[test]
    fn runs() {
        run_example().expect("gaussian_integral");
    }
}

#[allow(dead_code)]
mod root_systems {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/root_systems.rs"));

    #[test]
    fn runs() {
        run_example().expect("root_systems");
    }
}

#[allow(dead_code)]
mod lens_spaces {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lens_spaces.rs"));

    #[test]
    fn runs() {
        run_example().expect("lens_spaces");
    }
}

#[allow(dead_code)]
mod knot_from_file {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/knot_from_file.rs"));

    #[test]
    fn runs() {
        run_example().expect("knot_from_file");
    }
}

#[allow(dead_code)]
mod verify_identities {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_identities.rs"));

    #[test]
    fn runs() {
        run_example().expect("verify_identities");
    }
}
