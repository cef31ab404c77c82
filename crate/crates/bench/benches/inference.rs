use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use disentangle::corpus::synthetic::{synthetic_sample, SyntheticConfig};
use disentangle::features::{EmbeddingTable, SampleFeatures, FEATURE_COUNT};
use disentangle::models::{disentangle, FeedforwardScorer, LinearScorer, Nonlinearity};
use disentangle::DisentanglementModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_inference(c: &mut Criterion) {
    let cfg = SyntheticConfig { messages: 500, ..Default::default() };
    let sample = synthetic_sample("bench", &cfg).unwrap();
    let messages = &sample.messages;
    let no_vectors = EmbeddingTable::empty(0);

    let mut group = c.benchmark_group("inference");
    group.throughput(Throughput::Elements(messages.len() as u64));
    group.sample_size(10);

    group.bench_function("pair_features_window100", |b| {
        b.iter(|| {
            let features = SampleFeatures::new(messages);
            let mut sum = 0.0;
            for i in 0..messages.len() {
                for j in i.saturating_sub(100)..=i {
                    sum += features.pair(j, i).unwrap().values()[1];
                }
            }
            sum
        })
    });

    let linear = DisentanglementModel::linear(LinearScorer::zeros(FEATURE_COUNT), 0).unwrap();
    group.bench_function("linear_window100", |b| {
        b.iter(|| disentangle(&linear, messages, &no_vectors, 100).unwrap())
    });

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let scorer = FeedforwardScorer::random(FEATURE_COUNT, [256, 256], Nonlinearity::Relu, &mut rng);
    let ff = DisentanglementModel::feedforward(scorer, 0, 0).unwrap();
    group.bench_function("feedforward_256x256_window100", |b| {
        b.iter(|| disentangle(&ff, messages, &no_vectors, 100).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_inference);
criterion_main!(benches);
