// SPDX-License-Identifier: Apache-2.0
//
// coarray-lab: sparse sensor array design and Tx-Rx beampattern synthesis
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <coarray_lab/coarray_lab.hpp>

namespace {

using calab::json;

void emit(const json &j, const std::string &out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        calab::save_json(out_path, j);
}

unsigned resolve_threads(unsigned cli_value) {
    if (cli_value > 0)
        return cli_value;
    if (const char *env = std::getenv("COARRAY_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return 1;
}

struct ArraygenOpts {
    std::string kind;
    std::size_t n = 0, n1 = 0, n2 = 0, ntx = 0, nrx = 0;
    std::vector<calab::Position> generator;
    calab::Position offset = 0;
    std::string out;
};

void run_arraygen(const ArraygenOpts &o) {
    calab::ActiveArrayPair pair{calab::ArrayConfig({0}), calab::ArrayConfig({0})};
    json meta{{"kind", o.kind}};
    if (o.kind == "ula") {
        pair = calab::ActiveArrayPair(calab::ula(o.n));
        meta["n"] = o.n;
    } else if (o.kind == "nested") {
        pair = calab::ActiveArrayPair(calab::nested(o.n1, o.n2));
        meta["n1"] = o.n1;
        meta["n2"] = o.n2;
    } else if (o.kind == "cna") {
        pair = calab::ActiveArrayPair(calab::cna(o.n1, o.n2));
        meta["n1"] = o.n1;
        meta["n2"] = o.n2;
    } else if (o.kind == "sym-na") {
        const auto [params, config] = calab::symmetric_na_min_redundancy(o.n);
        pair = calab::ActiveArrayPair(config);
        meta["n"] = o.n;
        meta["n1"] = params.n1;
        meta["n2"] = params.n2;
        meta["alpha"] = params.alpha;
        meta["offset"] = params.offset;
    } else if (o.kind == "nonoverlap-mra") {
        pair = calab::nonoverlapping_mra(o.ntx, o.nrx);
        meta["n_tx"] = o.ntx;
        meta["n_rx"] = o.nrx;
    } else if (o.kind == "symmetric-from-generator") {
        if (o.generator.empty())
            throw calab::invalid_parameter("symmetric-from-generator needs --positions");
        pair = calab::ActiveArrayPair(
            calab::symmetric_from_generator(calab::ArrayConfig(o.generator), o.offset));
        meta["offset"] = o.offset;
    } else {
        throw calab::invalid_parameter("unknown --kind: " + o.kind);
    }
    emit(calab::to_json(pair, meta), o.out);
    const auto &tx = pair.tx;
    const auto &rx = pair.rx;
    std::cerr << "tx: " << tx.size() << " sensors, aperture " << tx.aperture() << "; rx: "
              << rx.size() << " sensors, aperture " << rx.aperture() << "\n";
}

struct CoarrayOpts {
    std::string in;
    std::string mode = "sum";
    std::string which = "tx";
    std::string out;
};

void run_coarray(const CoarrayOpts &o) {
    const calab::ActiveArrayPair pair = calab::pair_from_json(calab::load_json(o.in));
    if (o.mode == "difference") {
        const auto &cfg = o.which == "rx" ? pair.rx : pair.tx;
        emit(calab::to_json(calab::difference_coarray(cfg)), o.out);
        return;
    }
    if (o.mode != "sum")
        throw calab::invalid_parameter("unknown --mode: " + o.mode);
    const calab::CoArraySummary summary = calab::sum_coarray(pair);
    if (summary.contiguous)
        emit(calab::to_json(summary, calab::redundancy(pair)), o.out);
    else
        emit(calab::to_json(summary, std::nullopt, "sum co-array is not contiguous"), o.out);
}

struct SearchOpts {
    std::size_t n = 0;
    std::size_t ntx = 0, nrx = 0, nshared = 0;
    std::int64_t max_nodes = 100'000'000;
    double max_seconds = 60.0;
    unsigned threads = 0;
    std::string out;
};

void run_search(const SearchOpts &o) {
    calab::SearchBudget budget;
    budget.max_nodes = o.max_nodes;
    budget.max_seconds = o.max_seconds;
    calab::MraSolution sol;
    if (o.ntx > 0 || o.nrx > 0) {
        if (o.ntx == 0 || o.nrx == 0 || o.nshared == 0)
            throw calab::invalid_parameter(
                "two-array search needs --ntx, --nrx and --nshared together");
        sol = calab::search_general(o.ntx, o.nrx, o.nshared, budget);
    } else {
        if (o.n == 0)
            throw calab::invalid_parameter("search needs --n (or --ntx/--nrx/--nshared)");
        sol = calab::search_fully_overlapping(o.n, budget, resolve_threads(o.threads));
    }
    emit(calab::to_json(sol), o.out);
    if (!sol.complete)
        std::cerr << "warning: budget exhausted, solution set may be partial\n";
}

struct SynthOpts {
    std::string geometry;
    std::string target;
    std::string method = "ls";
    double tol = 1e-9;
    int restarts = 5;
    int max_iters = 500;
    std::uint64_t seed = 0;
    bool have_seed = false;
    std::size_t grid = 1024;
    std::string out;
    std::string pattern_out;
};

void run_synth(const SynthOpts &o) {
    const calab::ActiveArrayPair pair = calab::pair_from_json(calab::load_json(o.geometry));
    const Eigen::VectorXcd target = calab::coarray_target_from_json(calab::load_json(o.target));
    const calab::RedundancyPattern pattern = calab::redundancy_pattern(pair);
    calab::SynthesisResult result;
    if (o.method == "ls") {
        result = calab::ls_synthesis(target, pattern);
    } else if (o.method == "min-rank") {
        if (!o.have_seed)
            throw calab::invalid_parameter("--method min-rank draws random restarts; --seed is required");
        result = calab::min_rank_synthesis(target, pattern, o.tol, o.restarts, o.max_iters, o.seed);
    } else {
        throw calab::invalid_parameter("unknown --method: " + o.method);
    }
    emit(calab::to_json(result), o.out);
    if (!o.pattern_out.empty()) {
        const std::vector<double> u = calab::uniform_u_grid(o.grid);
        const Eigen::VectorXcd h =
            calab::synthesized_beampattern(result.components, pair, calab::angles_from_u(u));
        calab::save_text(o.pattern_out, calab::beampattern_csv(u, h));
    }
}

struct BeampatternOpts {
    std::string geometry;
    std::string weights;
    std::string components;
    std::size_t grid = 1024;
    std::string out;
};

void run_beampattern(const BeampatternOpts &o) {
    const calab::ActiveArrayPair pair = calab::pair_from_json(calab::load_json(o.geometry));
    if (o.weights.empty() == o.components.empty())
        throw calab::invalid_parameter("need exactly one of --weights or --components");
    const std::vector<double> u = calab::uniform_u_grid(o.grid);
    const std::vector<double> angles = calab::angles_from_u(u);
    Eigen::VectorXcd h;
    if (!o.weights.empty()) {
        const calab::BeamWeights w = calab::beam_weights_from_json(calab::load_json(o.weights));
        h = calab::txrx_beampattern(w, pair, angles);
    } else {
        const json cj = calab::load_json(o.components);
        const calab::ComponentSet c = calab::components_from_json(
            cj.contains("components") ? cj.at("components") : cj,
            static_cast<Eigen::Index>(pair.tx.size()), static_cast<Eigen::Index>(pair.rx.size()));
        h = calab::synthesized_beampattern(c, pair, angles);
    }
    const std::string csv = calab::beampattern_csv(u, h);
    if (o.out.empty())
        std::cout << csv;
    else
        calab::save_text(o.out, csv);
}

struct SimulateOpts {
    std::string geometry;
    std::string scene;
    std::string waveform = "orthogonal";
    double phi = 0.0;
    Eigen::Index samples = 0;
    double sigma2 = 0.0;
    std::uint64_t seed = 0;
    std::string components;
    std::string out;
};

void run_simulate(const SimulateOpts &o) {
    const calab::ActiveArrayPair pair = calab::pair_from_json(calab::load_json(o.geometry));
    const calab::Scene scene = calab::scene_from_json(calab::load_json(o.scene));
    if (o.samples < 1)
        throw calab::invalid_parameter("--t must be >= 1");
    if (!o.components.empty()) {
        const json cj = calab::load_json(o.components);
        const calab::ComponentSet c = calab::components_from_json(
            cj.contains("components") ? cj.at("components") : cj,
            static_cast<Eigen::Index>(pair.tx.size()), static_cast<Eigen::Index>(pair.rx.size()));
        const calab::ImageAdditionResult r =
            calab::image_addition_output(pair, scene, c, o.samples, o.sigma2, o.seed);
        json j;
        j["y_bar"] = calab::to_json(r.total);
        json per = json::array();
        for (const auto &y : r.per_component)
            per.push_back(calab::to_json(y));
        j["y_q"] = per;
        j["sigma2"] = o.sigma2;
        j["seed"] = o.seed;
        j["t"] = o.samples;
        emit(j, o.out);
        return;
    }
    calab::WaveformMatrix wf;
    if (o.waveform == "orthogonal")
        wf = calab::orthogonal_waveform(pair.tx.size(), o.samples);
    else if (o.waveform == "phased")
        wf = calab::phased_waveform(pair.tx, o.samples, o.phi);
    else
        throw calab::invalid_parameter("unknown --waveform: " + o.waveform);
    const calab::MeasurementBatch batch = calab::simulate(pair, scene, wf, o.sigma2, o.seed);
    emit(calab::to_json(batch), o.out);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"coarray-lab: sparse active-array design and Tx-Rx beampattern synthesis"};
    app.require_subcommand(1);

    ArraygenOpts ag;
    auto *arraygen = app.add_subcommand("arraygen", "Generate an array geometry file");
    arraygen->add_option("--kind", ag.kind,
                         "ula | nested | cna | sym-na | nonoverlap-mra | symmetric-from-generator")
        ->required();
    arraygen->add_option("--n", ag.n, "sensor count (ula, sym-na)");
    arraygen->add_option("--n1", ag.n1, "dense segment size (nested, cna)");
    arraygen->add_option("--n2", ag.n2, "sparse segment size (nested, cna)");
    arraygen->add_option("--ntx", ag.ntx, "tx count (nonoverlap-mra)");
    arraygen->add_option("--nrx", ag.nrx, "rx count (nonoverlap-mra)");
    arraygen->add_option("--positions", ag.generator, "generator positions")->delimiter(',');
    arraygen->add_option("--offset", ag.offset, "mirror offset (symmetric-from-generator)");
    arraygen->add_option("--out", ag.out, "output geometry JSON (default: stdout)");
    arraygen->callback([&ag]() { run_arraygen(ag); });

    CoarrayOpts co;
    auto *coarray = app.add_subcommand("coarray", "Summarize the co-array of a geometry");
    coarray->add_option("--in", co.in, "geometry JSON")->required();
    coarray->add_option("--mode", co.mode, "sum | difference (default sum)");
    coarray->add_option("--which", co.which, "tx | rx config for difference mode");
    coarray->add_option("--out", co.out, "output JSON (default: stdout)");
    coarray->callback([&co]() { run_coarray(co); });

    SearchOpts se;
    auto *search = app.add_subcommand("search-mra", "Exact minimum-redundancy array search");
    search->add_option("--n", se.n, "sensor count (shared tx/rx problem)");
    search->add_option("--ntx", se.ntx, "tx count (two-array problem)");
    search->add_option("--nrx", se.nrx, "rx count (two-array problem)");
    search->add_option("--nshared", se.nshared, "exact shared sensor count (two-array problem)");
    search->add_option("--budget-nodes", se.max_nodes, "node budget (default 1e8)");
    search->add_option("--budget-seconds", se.max_seconds, "time budget (default 60)");
    search->add_option("--threads", se.threads,
                       "worker threads (default: COARRAY_LAB_THREADS or 1)");
    search->add_option("--out", se.out, "output JSON (default: stdout)");
    search->callback([&se]() { run_search(se); });

    SynthOpts sy;
    auto *synth = app.add_subcommand("synth", "Synthesize co-array weights into components");
    synth->add_option("--geometry", sy.geometry, "geometry JSON")->required();
    synth->add_option("--target", sy.target, "target weights JSON ({\"w_sigma\": [{re,im}...]})")
        ->required();
    synth->add_option("--method", sy.method, "ls | min-rank (default ls)");
    synth->add_option("--tol", sy.tol, "max-norm tolerance (default 1e-9)");
    synth->add_option("--restarts", sy.restarts, "random restarts per rank (default 5)");
    synth->add_option("--max-iters", sy.max_iters, "alternating iterations per run (default 500)");
    auto *seed_opt = synth->add_option("--seed", sy.seed, "RNG seed (required for min-rank)");
    synth->add_option("--grid", sy.grid, "pattern grid points (default 1024)");
    synth->add_option("--out", sy.out, "result JSON (default: stdout)");
    synth->add_option("--pattern-out", sy.pattern_out, "synthesized beampattern CSV");
    synth->callback([&sy, seed_opt]() {
        sy.have_seed = seed_opt->count() > 0;
        run_synth(sy);
    });

    BeampatternOpts bp;
    auto *beampattern = app.add_subcommand("beampattern", "Evaluate a joint Tx-Rx beampattern");
    beampattern->add_option("--geometry", bp.geometry, "geometry JSON")->required();
    beampattern->add_option("--weights", bp.weights, "physical weights JSON");
    beampattern->add_option("--components", bp.components, "component set JSON");
    beampattern->add_option("--grid", bp.grid, "grid points (default 1024)");
    beampattern->add_option("--out", bp.out, "output CSV (default: stdout)");
    beampattern->callback([&bp]() { run_beampattern(bp); });

    SimulateOpts si;
    auto *simulate = app.add_subcommand("simulate", "Simulate measurements or image addition");
    simulate->add_option("--geometry", si.geometry, "geometry JSON")->required();
    simulate->add_option("--scene", si.scene, "scene JSON")->required();
    simulate->add_option("--waveform", si.waveform, "orthogonal | phased (default orthogonal)");
    simulate->add_option("--phi", si.phi, "steering angle for phased waveform (radians)");
    simulate->add_option("--t", si.samples, "time samples")->required();
    simulate->add_option("--sigma2", si.sigma2, "noise variance (default 0)");
    simulate->add_option("--seed", si.seed, "RNG seed")->required();
    simulate->add_option("--components", si.components, "component set JSON (image addition)");
    simulate->add_option("--out", si.out, "output JSON (default: stdout)");
    simulate->callback([&si]() { run_simulate(si); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const calab::synthesis_failure &e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "rank  best-residual\n";
        for (std::size_t q = 0; q < e.best_residual_per_rank.size(); ++q)
            std::cerr << (q + 1) << "     " << e.best_residual_per_rank[q] << "\n";
        return 3;
    } catch (const calab::invalid_parameter &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const calab::unsupported_configuration &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const calab::no_solution &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
