#include "stc/cli.hpp"

#include "stc/assembler.hpp"
#include "stc/bounds.hpp"
#include "stc/channel.hpp"
#include "stc/errors.hpp"
#include "stc/text_io.hpp"
#include "stc/tracecode.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

namespace stc {

namespace {

struct Options {
    int q = 2;
    long long n = 0, lmin = 0, lover = 0;
    int f = 0, index_len = 0;
    double a = 0, eps = 0;
    std::vector<double> gamma;
    std::string policy = "canonical";
    std::uint64_t seed = 0;
    std::string in, out, trace, params_file;
    std::string format = "text";
    std::string suite = "roundtrip";
    int seeds = 200;
    int max_n = 12;
};

using Echo = std::vector<std::pair<std::string, std::string>>;

class Command {
public:
    Command(CLI::App& app, const Options& o, std::ostream& out, std::ostream& err)
        : app_(app), o_(o), out_(out), err_(err) {}

    bool given(const std::string& flag) const { return app_.get_option(flag)->count() > 0; }

    void require(std::initializer_list<const char*> flags) const {
        for (const char* f : flags) {
            if (!given(f)) throw ParameterError(std::string("missing ") + f);
        }
    }

    ConstructionParams params() const {
        if (!o_.params_file.empty()) return params_from_key_value(read_file(o_.params_file));
        if (given("--a")) {
            require({"--q", "--n", "--gamma", "--eps"});
            if (o_.gamma.size() != 1) throw ParameterError("--gamma takes a single value here");
            return derive_params_asymptotic(o_.q, o_.n, o_.a, o_.gamma[0], o_.eps);
        }
        require({"--q", "--n", "--lmin", "--lover", "--f", "--index-len"});
        return derive_params(o_.q, o_.n, o_.lmin, o_.lover, o_.f, o_.index_len);
    }

    TraceParams channel_params(long long n) const {
        require({"--lmin", "--lover"});
        TraceParams p{n, o_.q, o_.lmin, o_.lover};
        p.validate();
        return p;
    }

    std::string input() const {
        if (o_.in.empty()) throw ParameterError("missing --in");
        return read_file(o_.in);
    }

    std::vector<Seq> sequences(const std::string& text) const {
        std::istringstream is(text);
        auto seqs = read_sequences(is, o_.q);
        if (seqs.empty()) throw ParameterError("no sequence in input");
        return seqs;
    }

    std::vector<Trace> traces(const std::string& text) const {
        std::istringstream is(text);
        auto ts = read_traces(is, o_.q);
        if (ts.empty()) throw ParameterError("no trace in input");
        return ts;
    }

    static std::string header(const std::string& cmd, const Echo& echo) {
        std::ostringstream os;
        os << "# stc " << cmd << "\n";
        for (const auto& [k, v] : echo) os << "# " << k << "=" << v << "\n";
        return os.str();
    }

    static std::string params_header(const std::string& cmd, const ConstructionParams& p) {
        std::ostringstream os;
        os << "# stc " << cmd << "\n";
        std::istringstream kv(p.to_key_value());
        for (std::string line; std::getline(kv, line);) os << (line.starts_with("#") ? "" : "# ") << line << "\n";
        return os.str();
    }

    void emit(const std::string& text) const {
        if (o_.out.empty()) {
            out_ << text;
        } else {
            write_file(o_.out, text);
        }
    }

    int bounds() const {
        const bool point = given("--n") && given("--lmin") && given("--lover");
        const bool asym = given("--a") && !o_.gamma.empty();
        if (!point && !asym) throw ParameterError("bounds needs --n --lmin --lover and/or --a --gamma");
        if (o_.format != "text" && o_.format != "csv") throw ParameterError("--format must be text or csv");

        Echo echo{{"q", std::to_string(o_.q)}, {"format", o_.format}};
        if (point) {
            echo.insert(echo.end(), {{"n", std::to_string(o_.n)}, {"l_min", std::to_string(o_.lmin)},
                                     {"l_over", std::to_string(o_.lover)}});
        }
        if (given("--a")) echo.emplace_back("a", num(o_.a));
        if (given("--eps")) echo.emplace_back("eps", num(o_.eps));

        std::string log_size, rate_upper;
        if (point) {
            const auto r = bound_report({o_.n, o_.q, o_.lmin, o_.lover});
            log_size = num(r.log_size_upper);
            rate_upper = num(r.rate_upper);
        }
        std::vector<std::optional<double>> gammas(o_.gamma.begin(), o_.gamma.end());
        if (gammas.empty()) gammas.emplace_back();

        std::ostringstream os;
        os << header("bounds", echo);
        if (o_.format == "csv") {
            os << "n,q,l_min,l_over,a,gamma,eps,log_size_upper,rate_upper,rate_upper_asymptotic,thm1_leading_term\n";
        }
        for (const auto& g : gammas) {
            std::string asym_rate, thm1;
            if (given("--a") && g) {
                asym_rate = num(asymptotic_rate_upper_bound(o_.a, *g));
                if (o_.a > 1 && given("--n") && given("--eps")) {
                    thm1 = num(construction_redundancy_bound(o_.n, o_.q, o_.a, *g, o_.eps));
                }
            }
            if (o_.format == "csv") {
                os << (point ? std::to_string(o_.n) : "") << ',' << o_.q << ','
                   << (point ? std::to_string(o_.lmin) : "") << ',' << (point ? std::to_string(o_.lover) : "") << ','
                   << (given("--a") ? num(o_.a) : "") << ',' << (g ? num(*g) : "") << ','
                   << (given("--eps") ? num(o_.eps) : "") << ',' << log_size << ',' << rate_upper << ','
                   << asym_rate << ',' << thm1 << '\n';
            } else {
                if (g) os << "gamma=" << num(*g) << "\n";
                if (point) os << "log_size_upper=" << log_size << "\nrate_upper=" << rate_upper << "\n";
                if (!asym_rate.empty()) os << "rate_upper_asymptotic=" << asym_rate << "\n";
                if (!thm1.empty()) os << "thm1_leading_term_estimate=" << thm1 << "\n";
                if (gammas.size() > 1) os << "\n";
            }
        }
        emit(os.str());
        return exit_ok;
    }

    int params_cmd() const {
        const auto p = params();
        std::ostringstream os;
        os << p.to_key_value() << redundancy_report(p).to_key_value();
        emit(os.str());
        return exit_ok;
    }

    int encode_cmd() const {
        const auto p = params();
        const auto msgs = sequences(input());
        std::ostringstream os;
        os << params_header("encode", p);
        for (const auto& x : msgs) write_sequence(os, encode(x, p));
        emit(os.str());
        return exit_ok;
    }

    int decode_cmd() const {
        const auto p = params();
        const auto ts = traces(input());
        std::ostringstream os;
        os << params_header("decode", p);
        for (const auto& t : ts) write_sequence(os, decode(t, p));
        emit(os.str());
        return exit_ok;
    }

    int channel_cmd() const {
        const auto xs = sequences(input());
        const auto policy = SamplePolicy::parse(o_.policy, o_.seed);
        std::ostringstream os;
        os << header("channel", {{"q", std::to_string(o_.q)},
                                 {"l_min", std::to_string(o_.lmin)},
                                 {"l_over", std::to_string(o_.lover)},
                                 {"policy", policy.name()},
                                 {"seed", std::to_string(o_.seed)}});
        for (const auto& x : xs) {
            const auto p = channel_params(static_cast<long long>(x.size()));
            write_trace(os, sample_trace(x, p, policy));
        }
        emit(os.str());
        return exit_ok;
    }

    int validate_cmd() const {
        const auto xs = sequences(input());
        if (o_.trace.empty()) throw ParameterError("missing --trace");
        const auto ts = traces(read_file(o_.trace));
        const auto p = channel_params(static_cast<long long>(xs.front().size()));
        std::ostringstream os;
        os << header("validate", {{"q", std::to_string(o_.q)},
                                  {"l_min", std::to_string(o_.lmin)},
                                  {"l_over", std::to_string(o_.lover)}});
        for (const auto& t : ts) os << to_string(validate_trace(xs.front(), t, p)) << "\n";
        emit(os.str());
        return exit_ok;
    }

    int spectrum_cmd() const {
        const auto xs = sequences(input());
        const auto p = channel_params(static_cast<long long>(xs.front().size()));
        const auto spec = enumerate_spectrum(xs.front(), p);
        std::ostringstream os;
        os << header("spectrum", {{"q", std::to_string(o_.q)},
                                  {"l_min", std::to_string(o_.lmin)},
                                  {"l_over", std::to_string(o_.lover)},
                                  {"spectrum_size", std::to_string(spec.size())}});
        for (const auto& t : spec) write_trace(os, t);
        emit(os.str());
        return exit_ok;
    }

    int assemble_cmd() const {
        require({"--lover"});
        const auto ts = traces(input());
        std::ostringstream os;
        os << header("assemble", {{"q", std::to_string(o_.q)}, {"l_over", std::to_string(o_.lover)}});
        int code = exit_ok;
        for (const auto& t : ts) {
            const auto r = assemble_rf(t, static_cast<std::size_t>(o_.lover));
            if (r.ok()) {
                write_sequence(os, r.seq);
                continue;
            }
            os << "# " << to_string(r.outcome) << ": " << r.reason << "\n";
            for (const auto& w : r.witnesses) os << "# witness " << w.str() << "\n";
            err_ << to_string(r.outcome) << ": " << r.reason << "\n";
            code = exit_decode;
        }
        emit(os.str());
        return code;
    }

    int fuzz_cmd() const {
        if (o_.suite == "roundtrip") return fuzz_roundtrip();
        if (o_.suite == "completeness") return fuzz_completeness();
        throw ParameterError("unknown --suite '" + o_.suite + "' (roundtrip|completeness)");
    }

private:
    using Clock = std::chrono::steady_clock;

    static std::string num(double v) {
        std::ostringstream os;
        os << std::setprecision(12) << v;
        return os.str();
    }

    static double ms_since(Clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    int fuzz_roundtrip() const {
        const auto p = params();
        double t_encode = 0, t_channel = 0, t_decode = 0;
        long long runs = 0, passed = 0, explicit_errors = 0, silent = 0;
        std::ostringstream log;
        for (int s = 0; s < o_.seeds; ++s) {
            const std::uint64_t seed = o_.seed + static_cast<std::uint64_t>(s);
            std::mt19937_64 rng(seed);
            std::vector<Symbol> xs(static_cast<std::size_t>(p.message_length()));
            for (auto& v : xs) v = static_cast<Symbol>(rng() % static_cast<unsigned>(p.q));
            const Seq x(Alphabet(p.q), std::move(xs));
            auto t0 = Clock::now();
            const Seq z = encode(x, p);
            t_encode += ms_since(t0);
            for (const char* name : {"canonical", "uniform_random", "max_fragmentation", "min_fragmentation"}) {
                ++runs;
                t0 = Clock::now();
                const Trace t = sample_trace(z, p.trace_params(), SamplePolicy::parse(name, seed));
                t_channel += ms_since(t0);
                t0 = Clock::now();
                try {
                    if (decode(t, p) == x) {
                        ++passed;
                    } else {
                        ++silent;
                        log << "failure seed=" << seed << " policy=" << name << "\n";
                    }
                } catch (const DecodeError& e) {
                    ++explicit_errors;
                    log << "decode_error seed=" << seed << " policy=" << name << ": " << e.what() << "\n";
                }
                t_decode += ms_since(t0);
            }
        }
        std::ostringstream os;
        os << params_header("fuzz", p) << "# suite=roundtrip\n# seeds=" << o_.seeds << "\n# seed=" << o_.seed << "\n"
           << "runs=" << runs << "\npassed=" << passed << "\ndecode_errors=" << explicit_errors
           << "\nsilent_failures=" << silent << "\ntime_encode_ms=" << num(t_encode)
           << "\ntime_channel_ms=" << num(t_channel) << "\ntime_decode_ms=" << num(t_decode) << "\n"
           << log.str();
        emit(os.str());
        return silent == 0 ? exit_ok : exit_fuzz_failure;
    }

    int fuzz_completeness() const {
        std::vector<long long> overs{2, 3};
        if (given("--lover")) overs = {o_.lover};
        long long strings = 0, traces_checked = 0, failures = 0;
        std::ostringstream log;
        const auto t0 = Clock::now();
        for (long long l_over : overs) {
            for (long long l_min : {l_over + 1, l_over + 2}) {
                for (long long n = l_min; n <= o_.max_n; ++n) {
                    const auto total = ipow(static_cast<unsigned long long>(o_.q), static_cast<unsigned>(n));
                    for (unsigned long long v = 0; v < total; ++v) {
                        const Seq x(Alphabet(o_.q), to_base_q(v, o_.q, static_cast<std::size_t>(n)));
                        if (l_over >= n || !is_repeat_free(x, static_cast<std::size_t>(l_over))) continue;
                        ++strings;
                        for (const auto& t : enumerate_spectrum(x, {n, o_.q, l_min, l_over})) {
                            ++traces_checked;
                            const auto r = assemble_rf(t, static_cast<std::size_t>(l_over));
                            if (!r.ok() || r.seq != x) {
                                ++failures;
                                log << "failure x=" << x.str() << " l_min=" << l_min << " l_over=" << l_over << "\n";
                            }
                        }
                    }
                }
            }
        }
        std::ostringstream os;
        os << header("fuzz", {{"suite", "completeness"}, {"q", std::to_string(o_.q)}, {"max_n", std::to_string(o_.max_n)}})
           << "strings=" << strings << "\ntraces=" << traces_checked << "\nfailures=" << failures
           << "\ntime_total_ms=" << num(ms_since(t0)) << "\n"
           << log.str();
        emit(os.str());
        return failures == 0 ? exit_ok : exit_fuzz_failure;
    }

    CLI::App& app_;
    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"String trace codes: encoder, decoder, channel simulator and bounds", "stc"};
    app.set_config("--config", "", "key=value file; flags override it");
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("--q", o.q, "alphabet size")->check(CLI::Range(2, 256));
    app.add_option("--n", o.n, "codeword length");
    app.add_option("--lmin", o.lmin, "minimum fragment length");
    app.add_option("--lover", o.lover, "minimum overlap");
    app.add_option("--f", o.f, "index segment length");
    app.add_option("--index-len", o.index_len, "index length I");
    app.add_option("--a", o.a, "l_min = a log n (asymptotic mode)");
    app.add_option("--gamma", o.gamma, "l_over = gamma l_min; a list sweeps in `bounds`")->delimiter(',');
    app.add_option("--eps", o.eps, "asymptotic slack exponent");
    app.add_option("--policy", o.policy, "canonical|uniform_random|max_fragmentation|min_fragmentation");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--in", o.in, "input file");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--trace", o.trace, "trace file (validate)");
    app.add_option("--params", o.params_file, "key=value parameter block from `params`");
    app.add_option("--format", o.format, "text|csv");
    app.add_option("--suite", o.suite, "fuzz suite: roundtrip|completeness");
    app.add_option("--seeds", o.seeds, "fuzz seed count");
    app.add_option("--max-n", o.max_n, "completeness suite: largest n");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"bounds", "evaluate size and rate upper bounds"},
        {"params", "derive and check construction parameters"},
        {"encode", "encode message sequences into codewords"},
        {"decode", "decode traces into messages"},
        {"channel", "sample a trace of each input sequence"},
        {"validate", "classify a trace against a sequence"},
        {"spectrum", "enumerate all traces of a short sequence"},
        {"assemble", "reassemble repeat-free strings from traces"},
        {"fuzz", "round-trip and completeness experiments"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    std::vector<std::string> argv_store{"stc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_params;
    }

    Command cmd(app, o, out, err);
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "bounds") return cmd.bounds();
        if (name == "params") return cmd.params_cmd();
        if (name == "encode") return cmd.encode_cmd();
        if (name == "decode") return cmd.decode_cmd();
        if (name == "channel") return cmd.channel_cmd();
        if (name == "validate") return cmd.validate_cmd();
        if (name == "spectrum") return cmd.spectrum_cmd();
        if (name == "assemble") return cmd.assemble_cmd();
        return cmd.fuzz_cmd();
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return exit_params;
    } catch (const DecodeError& e) {
        err << "decode error: " << e.what();
        if (e.offset() != DecodeError::npos) err << " (offset " << e.offset() << ")";
        err << "\n";
        return exit_decode;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return exit_resource;
    }
}

} // namespace stc
