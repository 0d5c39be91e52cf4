mod common;

use common::{labels, simple_graph};
use pmeasure::io::{
    emit_curve_csv, format_real, parse_edge_list, parse_partition, write_edge_list,
    write_partition, ReadOptions,
};
use pmeasure::{CurvePoint, Partition};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn edge_list_round_trip(g in simple_graph(0..40, 120)) {
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text, ReadOptions::default()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn partition_round_trip(l in labels(60, 9), n in 0usize..60) {
        let p = Partition::from_labels(&l[..n]);
        let text = write_partition(&p);
        let back = parse_partition(&text, n, ReadOptions::default()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(write_partition(&back), text);
    }

    #[test]
    fn one_based_files_shift_ids(g in simple_graph(1..30, 60)) {
        let text: String = g.edges().iter().map(|(u, v)| format!("{} {}\n", u + 1, v + 1)).collect();
        let header = format!("n {}\n{text}", g.vertex_count());
        prop_assert_eq!(parse_edge_list(&header, ReadOptions { one_based: true }).unwrap(), g);
    }

    #[test]
    fn formatted_reals_keep_twelve_digits(v in -1e6f64..1e6) {
        let s = format_real(v);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - v).abs() <= 1e-11 * v.abs().max(1e-300) + 1e-300 || v.abs() < 1e-5);
    }
}

#[test]
fn csv_is_sorted_and_deterministic() {
    let pts: Vec<CurvePoint> = (0..5)
        .rev()
        .flat_map(|i| {
            ["ri_g", "ari"].map(|m| CurvePoint {
                x: i as f64 / 4.0,
                measure: m.into(),
                mean: 1.0 / (i + 3) as f64,
                std: 0.0,
                trials: 10,
                degenerate: 0,
            })
        })
        .collect();
    let csv = emit_curve_csv(&pts).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows[..5].iter().all(|r| r.contains(",ari,")));
    assert_eq!(rows[0], "0,ari,0.333333333333,0,10,0");
    assert_eq!(rows[9], "1,ri_g,0.142857142857,0,10,0");
    let mut reversed = pts.clone();
    reversed.reverse();
    assert_eq!(emit_curve_csv(&reversed).unwrap(), csv);
}
