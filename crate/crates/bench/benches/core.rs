use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ntl_core::{cf_normal_form, enumerate_minuscule, is_minuscule, matrix_of, q_element, Diagram, TElement, Word};

fn nine_letter_word() -> (Diagram, Word) {
    (Diagram::new(6).unwrap(), Word(vec![6, 1, 3, 5, 0, 2, 4, 6, 3]))
}

fn words(c: &mut Criterion) {
    let (d, w) = nine_letter_word();
    let scrambled = Word(vec![3, 6, 4, 2, 0, 5, 3, 1, 6]);
    c.bench_function("cf_normal_form/n6", |b| b.iter(|| cf_normal_form(d, black_box(&w))));
    c.bench_function("is_minuscule/n6", |b| b.iter(|| is_minuscule(d, black_box(&w))));
    c.bench_function("is_minuscule/n6_rejected", |b| b.iter(|| is_minuscule(d, black_box(&scrambled))));
}

fn algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("mul_q_squared");
    for n in [2, 4, 6] {
        let d = Diagram::new(n).unwrap();
        let q = q_element(d);
        group.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| b.iter(|| q.mul(q)));
    }
    group.finish();

    let (d, w) = nine_letter_word();
    let x = TElement::basis(d, &w).unwrap();
    c.bench_function("matrix_of/n6", |b| b.iter(|| matrix_of(black_box(&x))));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (n, len) in [(2, 12), (3, 10)] {
        let d = Diagram::new(n).unwrap();
        group.bench_function(format!("n{n}_len{len}"), |b| b.iter(|| enumerate_minuscule(d, len, false)));
    }
    group.finish();
}

criterion_group!(benches, words, algebra, enumeration);
criterion_main!(benches);
