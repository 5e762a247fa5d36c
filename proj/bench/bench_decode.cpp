// Compares the serial reference path of the decoder kernels (threads=1)
// against the OpenMP path, and sequential vs frame-parallel batches, on a
// 1/25-scale code. Outcomes must be identical; only the wall time differs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "rlldpc/construct.hpp"
#include "rlldpc/decoder.hpp"
#include "rlldpc/ensemble.hpp"
#include "rlldpc/sim.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rlldpc;

int main(int argc, char** argv) {
    int frames = 16;
    double beta = 0.94;
    if (argc > 1) frames = std::atoi(argv[1]);
    if (argc > 2) beta = std::atof(argv[2]);

    std::printf("constructing 1/25-scale base code...\n");
    RLLDPCCode code = construct_base(ensemble_rate002(), Rational(1, 25), 1, "r002");
    BpDecoder decoder(code.matrix);
    const double rate = to_double(code.rate());
    const double snr = snr_for_capacity(rate / beta);
    std::printf("code %lldx%lld, %lld edges, beta %.3f, snr %.6f, %d frames\n",
                static_cast<long long>(code.matrix.rows()),
                static_cast<long long>(code.matrix.cols()),
                static_cast<long long>(code.matrix.edge_count()), beta, snr, frames);

    std::vector<FrameInput> inputs(frames);
    for (int i = 0; i < frames; ++i)
        inputs[i] = generate_sim_frame(decoder, snr, frame_seed(1, snr, i));

    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    // kernel-level comparison on one frame
    DecoderConfig serial;
    serial.threads = 1;
    DecoderConfig parallel;
    parallel.threads = 0;
    auto t0 = clock::now();
    DecodeResult r_serial = decoder.decode(inputs[0].llrs, inputs[0].target_syndrome, serial);
    const double t_serial = ms_since(t0);
    t0 = clock::now();
    DecodeResult r_parallel = decoder.decode(inputs[0].llrs, inputs[0].target_syndrome, parallel);
    const double t_parallel = ms_since(t0);
    const bool same = r_serial.hard_bits == r_parallel.hard_bits &&
                      r_serial.iterations_used == r_parallel.iterations_used;
    std::printf("kernels, one frame (%d iters): serial %.1f ms, openmp %.1f ms, "
                "speedup %.2fx, bit-identical=%d\n",
                r_serial.iterations_used, t_serial, t_parallel, t_serial / t_parallel, same);

    // frame-level comparison over the batch
    t0 = clock::now();
    std::vector<DecodeResult> seq(frames);
    for (int i = 0; i < frames; ++i)
        seq[i] = decoder.decode(inputs[i].llrs, inputs[i].target_syndrome, serial);
    const double t_seq = ms_since(t0);
    t0 = clock::now();
    std::vector<DecodeResult> par = batch_decode(decoder, inputs, parallel);
    const double t_par = ms_since(t0);

    bool all_same = true;
    for (int i = 0; i < frames; ++i)
        all_same &= seq[i].hard_bits == par[i].hard_bits &&
                    seq[i].iterations_used == par[i].iterations_used;
    const double bits = static_cast<double>(code.matrix.cols()) * frames;
    std::printf("batch of %d: sequential %.1f ms (%.2f Mbit/s), parallel %.1f ms (%.2f Mbit/s), "
                "speedup %.2fx, bit-identical=%d\n",
                frames, t_seq, bits / t_seq / 1e3, t_par, bits / t_par / 1e3, t_seq / t_par,
                all_same);
    return same && all_same ? 0 : 1;
}
