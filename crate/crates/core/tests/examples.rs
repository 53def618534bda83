//! Runs every example so they stay in sync with the library.

macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            #![allow(dead_code)]
            include!($file);
            #[test]
            fn runs() {
                main().unwrap();
            }
        }
    };
}

example!(ample_cone, "../examples/ample_cone.rs");
example!(primitive_relations, "../examples/primitive_relations.rs");
example!(potentials, "../examples/potentials.rs");
example!(walls, "../examples/walls.rs");
example!(stratify, "../examples/stratify.rs");
example!(compare, "../examples/compare.rs");
example!(adjunction, "../examples/adjunction.rs");
example!(plot_slice, "../examples/plot_slice.rs");
example!(kempf_oracle, "../examples/kempf_oracle.rs");
