// SPDX-License-Identifier: Apache-2.0
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

#include "ltient/cli.hpp"

#include "ltient/codec.hpp"
#include "ltient/covering.hpp"
#include "ltient/entropy.hpp"
#include "ltient/oracle.hpp"
#include "ltient/packing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <variant>

namespace ltient::cli {

namespace {

// Exceptions carrying an exit code out of a subcommand.
struct ExitError : std::runtime_error {
    ExitError(int code, const std::string &what) : std::runtime_error(what), code(code) {}
    int code;
};

using Cell = std::variant<double, std::int64_t, std::string, bool>;

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void write_csv(std::ostream &os) const
    {
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << (c ? "," : "") << columns[c];
        os << '\n';
        for (const auto &row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c)
                    os << ',';
                std::visit(
                    [&](const auto &v) {
                        using V = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<V, double>)
                            os << format_double(v);
                        else if constexpr (std::is_same_v<V, bool>)
                            os << (v ? "true" : "false");
                        else
                            os << v;
                    },
                    row[c]);
            }
            os << '\n';
        }
    }

    void write_json(std::ostream &os) const
    {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto &row : rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < row.size(); ++c)
                std::visit([&](const auto &v) { obj[columns[c]] = v; }, row[c]);
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << '\n';
    }
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

void add_output_options(CLI::App *cmd, OutputOptions &o)
{
    cmd->add_option("--format", o.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", o.path, std::string("Output file (default: $") + kOutputEnv + " or stdout)");
}

void emit(const Table &table, const OutputOptions &o, std::ostream &out)
{
    std::string path = o.path;
    if (path.empty())
        if (const char *env = std::getenv(kOutputEnv))
            path = env;
    auto write = [&](std::ostream &os) {
        if (o.format == "json")
            table.write_json(os);
        else
            table.write_csv(os);
    };
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ExitError(kBadConfig, "cannot open output file " + path);
    write(f);
}

struct ClassOptions {
    double a = 1.0;
    double b = 1.0;
};

void add_class_options(CLI::App *cmd, ClassOptions &c)
{
    cmd->add_option("-a", c.a, "Envelope amplitude a > 0")->capture_default_str();
    cmd->add_option("-b", c.b, "Decay rate b > 0")->capture_default_str();
}

DecayClass make_class(const ClassOptions &c)
{
    try {
        return DecayClass(c.a, c.b);
    } catch (const std::invalid_argument &e) {
        throw ExitError(kBadConfig, e.what());
    }
}

double checked_eps(const DecayClass &cls, double eps)
{
    if (!(std::isfinite(eps) && eps > 0.0 && eps < cls.a()))
        throw ExitError(kBadConfig, "eps must lie in (0, a); got eps=" + format_double(eps) +
                                        ", a=" + format_double(cls.a()));
    return eps;
}

// "start:stop:points", log-spaced.
std::vector<double> parse_sweep(const std::string &text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');)
        parts.push_back(item);
    if (parts.size() != 3)
        throw ExitError(kBadConfig, "sweep must have the form start:stop:points, got '" + text + "'");
    try {
        std::size_t used = 0;
        const double start = std::stod(parts[0], &used);
        const double stop = std::stod(parts[1]);
        const long points = std::stol(parts[2]);
        if (points < 1)
            throw ExitError(kBadConfig, "sweep needs at least one point");
        return log_sweep(start, stop, static_cast<std::size_t>(points));
    } catch (const ExitError &) {
        throw;
    } catch (const std::exception &) {
        throw ExitError(kBadConfig, "cannot parse sweep '" + text + "'");
    }
}

std::vector<double> eps_values(const DecayClass &cls, const std::optional<double> &eps, const std::string &sweep)
{
    std::vector<double> values;
    if (!sweep.empty())
        values = parse_sweep(sweep);
    else if (eps)
        values = {*eps};
    else
        throw ExitError(kBadConfig, "either --eps or --sweep is required");
    for (double e : values)
        checked_eps(cls, e);
    return values;
}

std::string read_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ExitError(kBadConfig, "cannot open input file " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// JSON array of numbers, or one coefficient per line (blank lines and '#' comments skipped).
ImpulseResponse parse_impulse_response(const std::string &text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<double> values;
    if (first != std::string::npos && text[first] == '[') {
        try {
            const auto j = nlohmann::json::parse(text);
            for (const auto &v : j) {
                if (!v.is_number())
                    throw ExitError(kBadInput, "impulse response JSON must be an array of numbers");
                values.push_back(v.get<double>());
            }
        } catch (const nlohmann::json::exception &e) {
            throw ExitError(kBadInput, std::string("invalid impulse response JSON: ") + e.what());
        }
        return ImpulseResponse(std::move(values));
    }
    std::stringstream ss(text);
    std::size_t line_no = 0;
    for (std::string line; std::getline(ss, line);) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r,");
        if (b == std::string::npos)
            continue;
        const auto e = line.find_last_not_of(" \t\r,");
        const std::string token = line.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size())
                throw std::invalid_argument(token);
        } catch (const std::exception &) {
            throw ExitError(kBadInput, "line " + std::to_string(line_no) + ": not a number: '" + token + "'");
        }
    }
    return ImpulseResponse(std::move(values));
}

// ---- subcommands -------------------------------------------------------

struct BoundsCmd {
    ClassOptions cls;
    std::optional<double> eps;
    std::string sweep;
    OutputOptions output;

    int run(std::ostream &out, std::ostream &err) const
    {
        const DecayClass c = make_class(cls);
        const auto values = eps_values(c, eps, sweep);
        Table t{{"eps", "log2_packing", "log2_covering", "closed_form_lower", "closed_form_upper", "asymptotic",
                 "ratio_lower", "ratio_upper"},
                {}};
        bool ordered = true;
        for (double e : values) {
            const EntropyReport r = entropy_report(c, e);
            ordered = ordered && r.ordered();
            t.rows.push_back({r.eps, r.log2_packing, r.log2_covering, r.closed_form_lower, r.closed_form_upper,
                              r.asymptotic, r.ratio_lower, r.ratio_upper});
        }
        emit(t, output, out);
        if (!ordered) {
            err << "bounds: bracket ordering violated\n";
            return kInvariantViolation;
        }
        return kOk;
    }
};

struct PackCmd {
    ClassOptions cls;
    double eps = 0.0;
    bool verify = false;
    std::uint64_t pairs = 10000;
    std::uint64_t seed = 1;
    std::string elements_path;
    OutputOptions output;

    int run(std::ostream &out, std::ostream &err) const
    {
        const DecayClass c = make_class(cls);
        checked_eps(c, eps);
        const PackingParams p = packing_params(c, eps);
        Table t{{"t", "n_t", "delta_t"}, {}};
        for (std::size_t s = 0; s < p.slots(); ++s)
            t.rows.push_back({static_cast<std::int64_t>(s), static_cast<std::int64_t>(p.counts[s]), p.steps[s]});
        emit(t, output, out);

        const BigUint card = packing_cardinality_exact(p);
        err << "C1=" << p.last_slot << " cardinality=" << card
            << " log2_cardinality=" << format_double(packing_log2_cardinality(p))
            << " closed_form_lower=" << format_double(packing_lower_bound(c, eps)) << '\n';

        if (!elements_path.empty())
            write_elements(c, p, card);

        if (verify) {
            if (card < 2) {
                err << "verify: packing has a single element, nothing to separate\n";
                return kOk;
            }
            const SeparationReport r = verify_separation(p, c, eps, pairs, seed);
            err << "verify: exhaustive=" << (r.exhaustive ? "true" : "false") << " pairs=" << r.pairs_checked
                << " min_separation=" << format_double(r.min_separation)
                << " threshold=" << format_double(r.threshold) << " violations=" << r.violations << '\n';
            if (!r.ok())
                return kInvariantViolation;
        }
        return kOk;
    }

    void write_elements(const DecayClass &c, const PackingParams &p, const BigUint &card) const
    {
        if (card > kExhaustiveSeparationLimit)
            throw ExitError(kBadConfig, "--elements requires at most 10000 elements");
        Table t{{"index"}, {}};
        for (std::size_t s = 0; s < p.slots(); ++s)
            t.columns.push_back("k" + std::to_string(s));
        MixedRadixIndex idx = MixedRadixIndex::zeros(p.radices());
        std::int64_t n = 0;
        do {
            std::vector<Cell> row{n++};
            const ImpulseResponse element = packing_element(p, c, idx);
            for (double v : element.coeffs())
                row.emplace_back(v);
            t.rows.push_back(std::move(row));
        } while (idx.increment());
        std::ofstream f(elements_path, std::ios::binary);
        if (!f)
            throw ExitError(kBadConfig, "cannot open " + elements_path);
        t.write_csv(f);
    }
};

struct CoverCmd {
    ClassOptions cls;
    double eps = 0.0;
    bool verify = false;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    std::string elements_path;
    OutputOptions output;

    int run(std::ostream &out, std::ostream &err) const
    {
        const DecayClass c = make_class(cls);
        checked_eps(c, eps);
        const CoveringParams p = covering_params(c, eps);
        Table t{{"t", "n_t", "delta_t"}, {}};
        for (std::size_t s = 0; s < p.slots(); ++s)
            t.rows.push_back({static_cast<std::int64_t>(s), static_cast<std::int64_t>(p.counts[s]), p.delta});
        emit(t, output, out);

        const BigUint card = covering_cardinality_exact(p);
        err << "C2=" << p.last_slot << " delta=" << format_double(p.delta) << " cardinality=" << card
            << " log2_cardinality=" << format_double(covering_log2_cardinality(p))
            << " closed_form_upper=" << format_double(covering_upper_bound(c, eps)) << '\n';

        if (!elements_path.empty()) {
            if (card > kExhaustiveSeparationLimit)
                throw ExitError(kBadConfig, "--elements requires at most 10000 elements");
            Table e{{"index"}, {}};
            for (std::size_t s = 0; s < p.slots(); ++s)
                e.columns.push_back("k" + std::to_string(s));
            MixedRadixIndex idx = MixedRadixIndex::zeros(p.counts);
            std::int64_t n = 0;
            do {
                std::vector<Cell> row{n++};
                const ImpulseResponse element = covering_element(p, c, idx);
                for (double v : element.coeffs())
                    row.emplace_back(v);
                e.rows.push_back(std::move(row));
            } while (idx.increment());
            std::ofstream f(elements_path, std::ios::binary);
            if (!f)
                throw ExitError(kBadConfig, "cannot open " + elements_path);
            e.write_csv(f);
        }

        if (verify) {
            const CoverReport r = verify_cover(p, c, eps, samples, seed);
            err << "verify: samples=" << r.samples << " worst_certified=" << format_double(r.worst_certified)
                << " worst_slot_error=" << format_double(r.worst_slot_error) << " tail=" << format_double(r.tail)
                << " eps=" << format_double(eps) << " violations=" << r.violations << '\n';
            if (!r.ok())
                return kInvariantViolation;
        }
        return kOk;
    }
};

struct EncodeCmd {
    ClassOptions cls;
    double eps = 0.0;
    std::string input;
    std::string output;

    int run(std::ostream &, std::ostream &err) const
    {
        const DecayClass c = make_class(cls);
        checked_eps(c, eps);
        const ImpulseResponse k = parse_impulse_response(read_file(input));
        Bitstream s;
        try {
            s = encode(c, eps, k);
        } catch (const NonMemberError &e) {
            throw ExitError(kBadInput, e.what());
        }
        const auto bytes = s.to_bytes();
        std::ofstream f(output, std::ios::binary);
        if (!f)
            throw ExitError(kBadConfig, "cannot open output file " + output);
        f.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));

        const CoveringParams p = covering_params(c, eps);
        const ImpulseResponse rec = decode(s).response;
        err << "encode: payload_bits=" << s.payload_bits << " header_bytes=" << kHeaderBytes
            << " total_bytes=" << bytes.size()
            << " certified_distortion=" << format_double(certified_distortion(p, c, k, rec))
            << " eps=" << format_double(eps) << '\n';
        return kOk;
    }
};

struct DecodeCmd {
    std::string input;
    std::string reference;
    OutputOptions output;

    int run(std::ostream &out, std::ostream &err) const
    {
        const std::string raw = read_file(input);
        const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
        Decoded d = [&] {
            try {
                return decode_bytes(bytes);
            } catch (const FormatError &e) {
                throw ExitError(kCorruptStream, e.what());
            } catch (const CorruptStreamError &e) {
                throw ExitError(kCorruptStream, e.what());
            }
        }();
        const CoveringParams p = covering_params(d.cls, d.eps);

        Table t{{"t", "k"}, {}};
        for (std::size_t s = 0; s < d.response.size(); ++s)
            t.rows.push_back({static_cast<std::int64_t>(s), d.response.at(s)});
        emit(t, output, out);

        // Without the original, the construction guarantees (C2+1) delta/2 + tail.
        const double guaranteed =
            static_cast<double>(p.slots()) * p.delta / 2.0 + tail_bound(d.cls, p.last_slot);
        err << "decode: a=" << format_double(d.cls.a()) << " b=" << format_double(d.cls.b())
            << " eps=" << format_double(d.eps) << " C2=" << p.last_slot
            << " guaranteed_distortion=" << format_double(guaranteed);
        int code = kOk;
        if (!reference.empty()) {
            const ImpulseResponse k = parse_impulse_response(read_file(reference));
            if (!is_member(d.cls, k, 0.0))
                throw ExitError(kBadInput, "reference impulse response is not a member of C(a,b)");
            const double cert = certified_distortion(p, d.cls, k, d.response);
            err << " certified_distortion=" << format_double(cert);
            if (!(cert <= certification_limit(p)))
                code = kInvariantViolation;
        }
        err << '\n';
        return code;
    }
};

struct OracleCmd {
    ClassOptions cls;
    std::size_t max_T = 1;
    std::size_t max_levels = 4;
    std::size_t eps_points = 10;
    double tol = 1e-10;
    OutputOptions output;

    int run(std::ostream &out, std::ostream &err) const
    {
        const DecayClass c = make_class(cls);
        if (max_levels < 1)
            throw ExitError(kBadConfig, "--max-levels must be positive");
        if (eps_points < 1)
            throw ExitError(kBadConfig, "--eps-points must be positive");
        if (!(tol > 0.0))
            throw ExitError(kBadConfig, "--tol must be positive");
        double largest = 1.0;
        for (std::size_t t = 0; t <= max_T; ++t)
            largest *= static_cast<double>(max_levels);
        if (largest > static_cast<double>(kMaxExhaustivePoints))
            throw ExitError(kBadConfig, "instance with levels^(T+1) = " + format_double(largest) +
                                            " points exceeds the exhaustive limit of 24");

        const std::vector<double> grid = log_sweep(0.05 * c.a(), 3.0 * c.a(), eps_points);
        Table t{{"T", "levels", "eps", "M2eps", "Neps", "Meps", "ok"}, {}};
        bool all_ok = true;
        for (std::size_t T = 0; T <= max_T; ++T)
            for (std::size_t levels = 1; levels <= max_levels; ++levels) {
                const FiniteMetricSet set = discretize_class(c, T, levels, tol);
                for (double e : grid) {
                    const SandwichReport r = sandwich_check(set, e);
                    all_ok = all_ok && r.ok;
                    t.rows.push_back({static_cast<std::int64_t>(T), static_cast<std::int64_t>(levels), e,
                                      static_cast<std::int64_t>(r.packing_2eps),
                                      static_cast<std::int64_t>(r.covering_eps),
                                      static_cast<std::int64_t>(r.packing_eps), r.ok});
                }
            }
        emit(t, output, out);
        if (!all_ok) {
            err << "oracle: covering/packing chain violated\n";
            return kInvariantViolation;
        }
        return kOk;
    }
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Metric entropy of exponentially decaying LTI systems under the H-infinity metric", "ltient"};
    app.require_subcommand(1);

    BoundsCmd bounds;
    auto *b = app.add_subcommand("bounds", "Packing/covering bracket on the metric entropy per eps");
    add_class_options(b, bounds.cls);
    b->add_option("--eps", bounds.eps, "Target accuracy");
    b->add_option("--sweep", bounds.sweep, "Log-spaced sweep start:stop:points");
    add_output_options(b, bounds.output);

    PackCmd pack;
    auto *p = app.add_subcommand("pack", "Explicit (2 eps)-packing parameters");
    add_class_options(p, pack.cls);
    p->add_option("--eps", pack.eps, "Target accuracy")->required();
    p->add_flag("--verify", pack.verify, "Check pairwise separation");
    p->add_option("--pairs", pack.pairs, "Random pairs when not exhaustive")->capture_default_str();
    p->add_option("--seed", pack.seed, "PRNG seed")->capture_default_str();
    p->add_option("--elements", pack.elements_path, "Write all elements (<= 10000) as CSV");
    add_output_options(p, pack.output);

    CoverCmd cover;
    auto *cv = app.add_subcommand("cover", "Explicit eps-covering parameters");
    add_class_options(cv, cover.cls);
    cv->add_option("--eps", cover.eps, "Target accuracy")->required();
    cv->add_flag("--verify", cover.verify, "Certify distortion on random members");
    cv->add_option("--samples", cover.samples, "Random members to certify")->capture_default_str();
    cv->add_option("--seed", cover.seed, "PRNG seed")->capture_default_str();
    cv->add_option("--elements", cover.elements_path, "Write all elements (<= 10000) as CSV");
    add_output_options(cv, cover.output);

    EncodeCmd enc;
    auto *e = app.add_subcommand("encode", "Encode an impulse response at distortion eps");
    add_class_options(e, enc.cls);
    e->add_option("--eps", enc.eps, "Target accuracy")->required();
    e->add_option("-i,--input", enc.input, "Impulse response: CSV (one value per line) or JSON array")->required();
    e->add_option("-o,--output", enc.output, "Bitstream file")->required();

    DecodeCmd dec;
    auto *d = app.add_subcommand("decode", "Decode a bitstream into its covering element");
    d->add_option("-i,--input", dec.input, "Bitstream file")->required();
    d->add_option("--reference", dec.reference, "Original impulse response for a certified distortion");
    add_output_options(d, dec.output);

    OracleCmd oracle;
    auto *o = app.add_subcommand("oracle", "Exhaustive packing/covering numbers on discretized instances");
    add_class_options(o, oracle.cls);
    o->add_option("--max-T", oracle.max_T, "Largest support index T")->capture_default_str();
    o->add_option("--max-levels", oracle.max_levels, "Largest number of levels per slot")->capture_default_str();
    o->add_option("--eps-points", oracle.eps_points, "eps grid size (log-spaced over [0.05a, 3a])")
        ->capture_default_str();
    o->add_option("--tol", oracle.tol, "Initial H-infinity enclosure width")->capture_default_str();
    add_output_options(o, oracle.output);

    std::vector<const char *> argv{"ltient"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        if (*b)
            return bounds.run(out, err);
        if (*p)
            return pack.run(out, err);
        if (*cv)
            return cover.run(out, err);
        if (*e)
            return enc.run(out, err);
        if (*d)
            return dec.run(out, err);
        if (*o)
            return oracle.run(out, err);
    } catch (const ExitError &ex) {
        err << "error: " << ex.what() << '\n';
        return ex.code;
    } catch (const NonMemberError &ex) {
        err << "error: " << ex.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument &ex) {
        err << "error: " << ex.what() << '\n';
        return kBadConfig;
    } catch (const std::domain_error &ex) {
        err << "error: " << ex.what() << '\n';
        return kBadConfig;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << '\n';
        return kInvariantViolation;
    }
    return kBadConfig;
}

} // namespace ltient::cli
