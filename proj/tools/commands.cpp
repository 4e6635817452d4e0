#include "commands.hpp"

#include <CLI11.hpp>

#include "io.hpp"
#include "mcrec/parallel.hpp"
#include "mcrec/recover.hpp"

namespace mcrec::cli {

namespace {

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

template <class T>
void check_match(const std::optional<T>& flag, const T& file_value, const char* name)
{
    if (flag && *flag != file_value) throw UsageError(std::string("--") + name + " conflicts with the input file");
}

// n and points from flags; points default to 0..n-1.
std::pair<std::size_t, std::optional<std::vector<Elem>>> layout(const RunConfig& cfg)
{
    if (!cfg.points.empty()) {
        if (cfg.n && *cfg.n != cfg.points.size()) throw UsageError("--n conflicts with --points");
        return {cfg.points.size(), cfg.points};
    }
    if (!cfg.n) throw UsageError("--n or --points is required");
    return {*cfg.n, std::nullopt};
}

std::size_t need(const std::optional<std::size_t>& v, const char* name)
{
    if (!v) throw UsageError(std::string("--") + name + " is required");
    return *v;
}

CodeParams params_for(const io::Message& msg, const RunConfig& cfg)
{
    check_match(cfg.p, msg.p, "p");
    check_match(cfg.k, msg.k, "k");
    auto [n, pts] = layout(cfg);
    return CodeParams::make(msg.p, n, need(cfg.s, "s"), msg.k, pts);
}

}  // namespace

int cmd_encode(const RunConfig& cfg, std::ostream& out)
{
    const io::Message msg = io::message_from_json(io::read_json(cfg.in));
    const CodeParams params = params_for(msg, cfg);
    io::CodewordFile file{msg.p, params.s, params.k, params.points, encode(params, msg.f)};
    io::write_text(cfg.out, io::to_json(file).dump() + "\n", out);
    return kOk;
}

int cmd_corrupt(const RunConfig& cfg, std::ostream& out)
{
    const io::json j = io::read_json(cfg.in);
    CodeParams params;
    Codeword cw;
    if (j.is_object() && j.contains("symbols")) {
        io::CodewordFile c = io::codeword_from_json(j);
        check_match(cfg.p, c.p, "p");
        check_match(cfg.k, c.k, "k");
        check_match(cfg.s, c.s, "s");
        params = CodeParams::make(c.p, c.points.size(), c.s, c.k, c.points);
        cw = std::move(c.cw);
    } else {
        const io::Message msg = io::message_from_json(j);
        params = params_for(msg, cfg);
        cw = encode(params, msg.f);
    }
    const ReceivedWord word =
        simulate_channel(params, cw, need(cfg.agreements, "agreements"), need(cfg.ell, "ell"), cfg.seed);
    io::write_text(cfg.out, io::to_json(io::WordFile{word, params.k}).dump() + "\n", out);
    return kOk;
}

int cmd_recover(const RunConfig& cfg, std::ostream& out)
{
    const io::WordFile wf = io::word_from_json(io::read_json(cfg.in));
    const ReceivedWord& word = wf.word;
    check_match(cfg.p, word.p, "p");
    check_match(cfg.n, word.n(), "n");
    check_match(cfg.s, word.s, "s");
    const std::size_t k = cfg.k.value_or(wf.k);
    const std::size_t ell = cfg.ell.value_or(word.ell);
    const CodeParams code = CodeParams::make(word.p, word.n(), word.s, k, word.points());

    RecoveryParams params;
    if (cfg.epsilon) {
        if (cfg.m || cfg.threshold) throw UsageError("--epsilon cannot be combined with --m or --threshold");
        params = derive_parameters(code, ell, *cfg.epsilon);
    } else {
        if (!cfg.m || !cfg.threshold) throw UsageError("give --epsilon, or both --m and --threshold");
        params = manual_parameters(code, ell, *cfg.m, *cfg.threshold);
    }
    PruneConfig pc;
    pc.trials = cfg.trials.value_or(0);
    pc.seed = cfg.seed;
    pc.gamma = cfg.gamma;

    io::json list = io::json::array();
    for (const Poly& f : list_recover(word, params, pc)) list.push_back(io::to_json(io::Message{word.p, k, f}));
    io::write_text(cfg.out, list.dump() + "\n", out);
    return kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"List recovery for univariate multiplicity codes"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--in", cfg.in, "input JSON file, - for stdin");
        sc->add_option("--out", cfg.out, "output file, - for stdout");
        sc->add_option("--p", cfg.p, "field modulus");
        sc->add_option("--n", cfg.n, "block length");
        sc->add_option("--s", cfg.s, "multiplicity");
        sc->add_option("--k", cfg.k, "message length (degree < k)");
        sc->add_option("--ell", cfg.ell, "list size");
        sc->add_option("--seed", cfg.seed, "random seed");
        sc->add_option("--threads", cfg.threads, "worker thread cap");
        sc->add_option("--points", cfg.points, "evaluation points, comma separated")->delimiter(',');
    };
    auto decoding = [&](CLI::App* sc) {
        auto* eps = sc->add_option("--epsilon", cfg.epsilon, "capacity mode slack");
        auto* m = sc->add_option("--m", cfg.m, "manual mode: Y-degree of the interpolant");
        auto* t = sc->add_option("--threshold", cfg.threshold, "manual mode: agreement threshold");
        eps->excludes(m)->excludes(t);
        sc->add_option("--gamma", cfg.gamma, "prune failure budget");
        sc->add_option("--trials", cfg.trials, "prune passes (default from gamma)");
    };

    auto* enc = app.add_subcommand("encode", "encode a message file");
    common(enc);
    auto* cor = app.add_subcommand("corrupt", "plant a codeword in random candidate lists");
    common(cor);
    cor->add_option("--agreements,-t", cfg.agreements, "number of coordinates carrying the codeword");
    auto* rec = app.add_subcommand("recover", "list-recover a received word");
    common(rec);
    decoding(rec);
    auto* self = app.add_subcommand("selftest", "run the invariant suites");
    common(self);
    self->add_flag("--inject-fault", cfg.inject_fault)->group("");
    auto* bench = app.add_subcommand("bench", "time the pipeline phases over a size sweep");
    common(bench);
    decoding(bench);
    bench->add_option("--sizes", cfg.sizes, "block lengths, comma separated")->delimiter(',');
    bench->add_option("--rate", cfg.rate, "k / (n s) when --k is not given");
    bench->add_option("--fraction", cfg.fraction, "planted agreement fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.threads) set_thread_limit(*cfg.threads);

    try {
        if (cfg.command == "encode") return cmd_encode(cfg, out);
        if (cfg.command == "corrupt") return cmd_corrupt(cfg, out);
        if (cfg.command == "recover") return cmd_recover(cfg, out);
        if (cfg.command == "bench") return cmd_bench(cfg, out);
        return cmd_selftest(cfg, out, err);
    } catch (const io::FormatError& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kUsage;
    } catch (const io::json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kCheckFailed;
    }
}

}  // namespace mcrec::cli
