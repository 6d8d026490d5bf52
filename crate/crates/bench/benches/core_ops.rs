use criterion::{black_box, criterion_group, criterion_main, Criterion};

use coxinv::analysis::Analyzer;
use coxinv::topology::vcd;
use coxinv::{canonical_form, enumerate_graphs, CoxeterGraph, EnumerationConfig};

fn sample_graph() -> CoxeterGraph {
    // 8-vertex mix of spherical, affine and indefinite parts
    CoxeterGraph::parse(
        "a b 3\nb c 3\nc d 4\nd e 3\ne f 5\nf a 3\nb g 2\ng h 7\n",
    )
    .unwrap()
}

fn bench_canonical_form(c: &mut Criterion) {
    let g = sample_graph();
    c.bench_function("canonical_form_8_vertices", |b| {
        b.iter(|| canonical_form(black_box(&g)))
    });
}

fn bench_spherical_table(c: &mut Criterion) {
    let g = sample_graph();
    c.bench_function("spherical_table_8_vertices", |b| {
        b.iter(|| Analyzer::new(black_box(&g)).maximal_spherical())
    });
}

fn bench_vcd(c: &mut Criterion) {
    let g = sample_graph();
    c.bench_function("vcd_8_vertices", |b| {
        b.iter(|| {
            let a = Analyzer::new(black_box(&g));
            vcd(&a)
        })
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let cfg = EnumerationConfig {
        max_vertices: 4,
        max_label: 4,
        connected_only: true,
    };
    c.bench_function("enumerate_connected_4_vertices_labels_4", |b| {
        b.iter(|| enumerate_graphs(black_box(&cfg)).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_canonical_form,
    bench_spherical_table,
    bench_vcd,
    bench_enumeration
);
criterion_main!(benches);
