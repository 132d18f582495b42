#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "foursq/arith.hpp"
#include "foursq/certificate.hpp"
#include "foursq/descent.hpp"
#include "foursq/format.hpp"
#include "foursq/foursquares.hpp"
#include "foursq/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRange = 3;
constexpr int kExitNotPrime = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_input(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("'" + text + "' is not a non-negative decimal integer");
    foursq::UInt128 v = 0;
    for (char ch : text) {
        v = v * 10 + unsigned(ch - '0');
        if (v > foursq::kMaxInput) throw foursq::RangeError("'" + text + "' exceeds 2^62");
    }
    return std::uint64_t(v);
}

nlohmann::ordered_json quad_json(const foursq::Quadruple& q) {
    auto arr = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) arr.push_back(foursq::to_string(q[i]));
    return arr;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw foursq::CertificateParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_decompose(const std::string& n_text, bool canonical, std::uint64_t seed,
                  const std::string& cert_path, bool json_out) {
    std::uint64_t n = parse_input(n_text);
    foursq::Decomposition dec = foursq::decompose(n, seed);
    foursq::Quadruple shown = canonical ? foursq::canonicalize(dec.q) : dec.q;

    if (json_out) {
        nlohmann::ordered_json j;
        j["n"] = std::to_string(n);
        j["seed"] = std::to_string(seed);
        j["canonical"] = canonical;
        j["quadruple"] = quad_json(shown);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << foursq::format_seed_line(seed) << "\n";
        std::cout << foursq::format_decomposition(n, shown) << "\n";
    }
    if (!cert_path.empty()) {
        write_file(cert_path, foursq::serialize(dec.certs));
        std::cerr << "certificates written to " << cert_path << "\n";
    }
    return kExitOk;
}

int cmd_prime(const std::string& p_text, bool canonical, bool trace, std::uint64_t seed,
              const std::string& cert_path, bool json_out) {
    std::uint64_t p = parse_input(p_text);
    if (!foursq::is_prime(p)) {
        std::cerr << "error: " << p << " is not prime\n";
        return kExitNotPrime;
    }
    foursq::PrimeDecomposition pd = foursq::decompose_prime(p, seed);
    foursq::Quadruple shown = canonical ? foursq::canonicalize(pd.q) : pd.q;

    if (json_out) {
        nlohmann::ordered_json j;
        j["p"] = std::to_string(p);
        j["seed"] = std::to_string(seed);
        j["canonical"] = canonical;
        j["quadruple"] = quad_json(shown);
        j["chain_length"] = pd.cert.steps.size();
        if (trace) {
            auto steps = nlohmann::ordered_json::array();
            for (const auto& rec : pd.cert.steps) {
                nlohmann::ordered_json s;
                s["step"] = rec.step_index;
                s["p_prime"] = std::to_string(rec.p_prime);
                s["a5_before"] = std::to_string(rec.a5);
                s["a5_after"] = std::to_string(rec.a5_next);
                s["key_before"] = {{"L", rec.key_before.L}, {"nu", rec.key_before.nu}};
                s["key_after"] = {{"L", rec.key_after.L}, {"nu", rec.key_after.nu}};
                steps.push_back(std::move(s));
            }
            j["trace"] = std::move(steps);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << foursq::format_seed_line(seed) << "\n";
        if (trace)
            for (const auto& rec : pd.cert.steps)
                std::cout << foursq::format_trace_line(rec) << "\n";
        std::cout << foursq::format_decomposition(p, shown) << "\n";
    }
    if (!cert_path.empty()) {
        write_file(cert_path, foursq::serialize(pd.cert));
        std::cerr << "certificate written to " << cert_path << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& path) {
    std::vector<foursq::Certificate> certs = foursq::deserialize_any(read_file(path));
    bool all_valid = true;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        foursq::VerificationReport report = foursq::verify(certs[i]);
        if (!report.valid()) {
            all_valid = false;
            if (certs.size() > 1) std::cout << "certificate " << i << ":\n";
            std::cout << report.summary() << "\n";
        }
    }
    if (all_valid) {
        std::cout << "VALID\n";
        return kExitOk;
    }
    return kExitVerifyFailed;
}

int cmd_bench(const std::string& range, const std::string& csv_path, std::uint64_t seed) {
    auto sep = range.find("..");
    if (sep == std::string::npos)
        throw UsageError("--range expects the form A..B, got '" + range + "'");
    std::uint64_t lo = parse_input(range.substr(0, sep));
    std::uint64_t hi = parse_input(range.substr(sep + 2));
    if (lo > hi) throw UsageError("--range bounds are reversed");

    bool ok;
    if (csv_path.empty()) {
        ok = foursq::run_bench(lo, hi, seed, std::cout);
    } else {
        std::ostringstream buf;
        ok = foursq::run_bench(lo, hi, seed, buf);
        write_file(csv_path, buf.str());
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-square decompositions with verifiable descent certificates"};
    app.require_subcommand(1);

    std::string number, cert_path, verify_path, range, csv_path;
    std::uint64_t seed = foursq::kDefaultSeed;
    bool canonical = false, json_out = false, trace = false;
    foursq::SelftestOptions selftest;

    auto* dec = app.add_subcommand("decompose", "write n as a sum of four squares");
    dec->add_option("n", number, "non-negative integer <= 2^62")->required();
    dec->add_flag("--canonical", canonical, "sort absolute values descending");
    dec->add_option("--seed", seed, "random seed (default 0)");
    dec->add_option("--cert", cert_path, "write certificates (JSON) to this path");
    dec->add_flag("--json", json_out, "machine-readable output");

    auto* pri = app.add_subcommand("prime", "decompose a prime via order descent");
    pri->add_option("p", number, "prime <= 2^62")->required();
    pri->add_flag("--canonical", canonical, "sort absolute values descending");
    pri->add_flag("--trace", trace, "print one line per descent step");
    pri->add_option("--seed", seed, "random seed (default 0)");
    pri->add_option("--cert", cert_path, "write the certificate (JSON) to this path");
    pri->add_flag("--json", json_out, "machine-readable output");

    auto* ver = app.add_subcommand("verify", "check a certificate file");
    ver->add_option("path", verify_path, "certificate JSON (object or array)")->required();

    auto* st = app.add_subcommand("selftest", "run the property suites");
    st->add_option("--max", selftest.max, "sweep bound (default 10000)");
    st->add_option("--jobs", selftest.jobs, "worker threads (default 1)");
    st->add_option("--seed", selftest.seed, "random seed (default 0)");

    auto* bench = app.add_subcommand("bench", "decompose every prime in a range, emit CSV");
    bench->add_option("--range", range, "prime range A..B")->required();
    bench->add_option("--csv", csv_path, "write CSV here instead of stdout");
    bench->add_option("--seed", seed, "random seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int cli_rc = app.exit(e);
        return cli_rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dec->parsed()) return cmd_decompose(number, canonical, seed, cert_path, json_out);
        if (pri->parsed()) return cmd_prime(number, canonical, trace, seed, cert_path, json_out);
        if (ver->parsed()) return cmd_verify(verify_path);
        if (st->parsed())
            return foursq::run_selftest(selftest, std::cout) ? kExitOk : kExitVerifyFailed;
        if (bench->parsed()) return cmd_bench(range, csv_path, seed);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const foursq::RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRange;
    } catch (const foursq::CertificateParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitUsage;
}
