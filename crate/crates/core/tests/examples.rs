macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!($file);

            #[test]
            fn runs() {
                run_example();
            }
        }
    };
}

example!(adjunction, "../examples/adjunction.rs");
example!(chart_recognition, "../examples/chart_recognition.rs");
example!(tree_programs, "../examples/tree_programs.rs");
example!(graph_encoding, "../examples/graph_encoding.rs");
example!(reduction, "../examples/reduction.rs");
example!(grammar_format, "../examples/grammar_format.rs");
example!(campaign, "../examples/campaign.rs");
