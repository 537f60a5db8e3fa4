#include <benchmark/benchmark.h>

#include "semcomm/baseline.hpp"
#include "semcomm/encoder.hpp"
#include "semcomm/harness.hpp"
#include "semcomm/phy.hpp"

using namespace semcomm;

namespace {

scenegen::Image scene(const std::string& label) {
    RandomStream rng(1);
    return scenegen::render(scenegen::sample_spec(cspace::find_concept(label), rng), rng);
}

void BM_Render(benchmark::State& state) {
    RandomStream rng(2);
    const auto spec = scenegen::sample_spec(cspace::find_concept("red-octagon"), rng);
    for (auto _ : state) benchmark::DoNotOptimize(scenegen::render(spec, rng));
}
BENCHMARK(BM_Render);

void BM_Encode(benchmark::State& state) {
    const auto img = scene("red-octagon");
    for (auto _ : state) benchmark::DoNotOptimize(encoder::encode(img));
}
BENCHMARK(BM_Encode);

void BM_Decode(benchmark::State& state) {
    const cspace::SemanticPoint p{1.05, 0.01, 0.95, 0.96};
    for (auto _ : state) benchmark::DoNotOptimize(&cspace::decode_concept(p, cspace::standard_concepts()));
}
BENCHMARK(BM_Decode);

void BM_Channel(benchmark::State& state) {
    const std::vector<std::uint8_t> bits(static_cast<std::size_t>(state.range(0)), 0);
    phy::ChannelParams ch;
    ch.snr_db = 15.0;
    RandomStream rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(phy::transmit_bits(bits, ch, rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Channel)->Arg(32)->Arg(15000);

void BM_PixelRoundtrip(benchmark::State& state) {
    const auto img = scene("yellow-square");
    for (auto _ : state)
        benchmark::DoNotOptimize(baseline::pixel_dequantize(baseline::pixel_quantize(img, 8), 8));
}
BENCHMARK(BM_PixelRoundtrip);

void BM_Trial(benchmark::State& state) {
    const auto system = state.range(0) == 0 ? harness::System::Semantic : harness::System::Traditional;
    phy::ChannelParams ch;
    ch.snr_db = 15.0;
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(harness::run_indexed_trial(system, 8, ch, 1, i++));
}
BENCHMARK(BM_Trial)->Arg(0)->Arg(1)->ArgNames({"traditional"});

}  // namespace

BENCHMARK_MAIN();
