#include "chang/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "chang/classify.hpp"
#include "chang/oracle.hpp"

namespace chang {

namespace {

using nlohmann::json;

constexpr const char* kUsage = R"(usage: chang <command> [args]

commands:
  table <complex> <degree> [--json]
      print the homotopy-group table of one elementary complex
  compose <morph> <degree> <element> [--json]
      apply a canonical map to a class; morph is name:source[->target]
  reduce <wedge> <vector> [--degree N] [--trace] [--json]
      canonical form of an attaching vector under the shipped rules
  classify <descriptor-file> [--local=2|3|total] [--json] [--expand]
      candidate decompositions per the classification statements
  oracle <wedge> [--degree N] [--budget N] [--parallel] [--list] [--json]
      exhaustive orbit partition and canonical-form cross-check
  audit <descriptor-file> [--local=2|3|total]
      homology soundness check of every emitted candidate

CHANG_BUDGET overrides the state/application budgets.
)";

struct Args {
    std::vector<std::string> positional;
    std::vector<std::string> flags;

    bool has(const std::string& f) const {
        for (const auto& x : flags)
            if (x == f) return true;
        return false;
    }
    std::string value(const std::string& prefix, const std::string& dflt) const {
        for (const auto& x : flags)
            if (x.rfind(prefix, 0) == 0) return x.substr(prefix.size());
        return dflt;
    }
};

Args split_args(const std::vector<std::string>& args, std::size_t from) {
    Args out;
    for (std::size_t i = from; i < args.size(); ++i) {
        if (args[i].rfind("--", 0) == 0)
            out.flags.push_back(args[i]);
        else
            out.positional.push_back(args[i]);
    }
    return out;
}

std::size_t env_budget(std::size_t dflt) {
    if (const char* v = std::getenv("CHANG_BUDGET")) return std::stoull(v);
    return dflt;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json vector_json(const AttachingVector& v) {
    json entries = json::array();
    for (std::size_t i = 0; i < v.wedge().size(); ++i) {
        json coeffs = json::array();
        for (long c : v.entry(i).coefficients()) coeffs.push_back(c);
        entries.push_back({{"summand", v.wedge()[i].to_string()}, {"coefficients", coeffs}});
    }
    return json{{"literal", v.to_string()}, {"entries", entries}};
}

// Parses name:source[->target] into a concrete morphism.
MorphSymbol parse_morph(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw StructuralError("morph literal looks like name:source[->target]");
    std::string name = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    std::string src_s = rest, tgt_s;
    if (auto arrow = rest.find("->"); arrow != std::string::npos) {
        src_s = rest.substr(0, arrow);
        tgt_s = rest.substr(arrow + 2);
    }
    ElementaryComplex src = ElementaryComplex::parse(src_s);
    std::optional<ElementaryComplex> tgt;
    if (!tgt_s.empty()) tgt = ElementaryComplex::parse(tgt_s);

    // morphs with a forced target can infer it from the source
    auto infer = [&](Morph tag) -> MorphSymbol {
        if (tgt) return MorphSymbol(tag, src, *tgt);
        switch (tag) {
            case Morph::MoorePinch:
                return MorphSymbol(tag, src, ElementaryComplex::sphere(src.bottom() + 1));
            case Morph::CEtaPinch:
                return MorphSymbol(tag, src, ElementaryComplex::sphere(src.top()));
            case Morph::ZetaBar:
            case Morph::CSMu:
                return MorphSymbol(tag, src, ElementaryComplex::sphere(src.bottom()));
            case Morph::CRPinchTop:
            case Morph::RSPinchTop:
                return MorphSymbol(tag, src, ElementaryComplex::sphere(src.top()));
            case Morph::CRPinchMid:
            case Morph::RSPinchMid:
                return MorphSymbol(tag, src, ElementaryComplex::sphere(src.top() - 1));
            case Morph::CSPinchEta:
                return MorphSymbol(tag, src, ElementaryComplex::chang_eta(src.top()));
            case Morph::CSPinchMoore:
            case Morph::RSPinchMoore:
                return MorphSymbol(tag, src,
                                   ElementaryComplex::moore(src.top(), 2, src.s()));
            case Morph::RSPinchCR:
                return MorphSymbol(tag, src, ElementaryComplex::chang_r(src.top(), src.r()));
            case Morph::EtaCoext:
                return MorphSymbol(tag, src, ElementaryComplex::sphere(src.bottom() - 1));
            default:
                throw StructuralError("morph '" + name + "' needs an explicit ->target");
        }
    };
    for (Morph tag : {Morph::Id, Morph::Eta, Morph::Eta2, Morph::MooreInc, Morph::MoorePinch,
                      Morph::EtaTildeMap, Morph::EtaCoext, Morph::BChi, Morph::CEtaInc,
                      Morph::CEtaPinch, Morph::ZetaBar, Morph::ZetaTilde, Morph::CREtaInc,
                      Morph::CRIncP, Morph::CRPinchTop, Morph::CRPinchMid, Morph::CRToMoore,
                      Morph::CSIncTop, Morph::CSIncBot, Morph::CSPinchTop, Morph::CSPinchEta,
                      Morph::CSPinchMoore, Morph::CSToRS, Morph::CSXi, Morph::CSMu,
                      Morph::CSMuDown, Morph::CSLambdaDown, Morph::CSThetaUp, Morph::RSIncTop,
                      Morph::RSIncBot, Morph::RSIncP, Morph::RSPinchTop, Morph::RSPinchMid,
                      Morph::RSPinchMoore, Morph::RSPinchCR}) {
        if (morph_name(tag) == name) return infer(tag);
    }
    throw StructuralError("unknown morph name: " + name);
}

Locality parse_locality(const Args& a) {
    std::string v = a.value("--local=", "total");
    if (v == "2") return Locality::Two;
    if (v == "3") return Locality::Three;
    if (v == "total") return Locality::Total;
    throw StructuralError("--local must be 2, 3 or total");
}

std::vector<WedgeDecomposition> run_classify(const ManifoldInvariants& inv, Locality loc) {
    switch (loc) {
        case Locality::Two: return classify_2local(inv);
        case Locality::Three: return classify_3local(inv);
        case Locality::Total: return classify_total(inv);
    }
    throw StructuralError("unreachable");
}

int cmd_table(const Args& a, std::ostream& out) {
    if (a.positional.size() != 2) throw StructuralError("table needs <complex> <degree>");
    ElementaryComplex c = ElementaryComplex::parse(a.positional[0]);
    int degree = std::stoi(a.positional[1]);
    HomotopyGroupTable t = pi(c, degree);
    if (a.has("--json")) {
        json gens = json::array();
        for (std::size_t i = 0; i < t.generators.size(); ++i)
            gens.push_back({{"order", t.group.summands()[i].order},
                            {"generator", gen_display(t.generators[i])},
                            {"token", gen_token(t.generators[i])}});
        out << json{{"schema", "chang/1"},
                    {"command", "table"},
                    {"complex", c.to_string()},
                    {"degree", degree},
                    {"group", t.group.to_string()},
                    {"summands", gens}}
                   .dump()
            << "\n";
    } else {
        out << t.to_string() << "\n";
    }
    return 0;
}

int cmd_compose(const Args& a, std::ostream& out) {
    if (a.positional.size() != 3)
        throw StructuralError("compose needs <morph> <degree> <element>");
    MorphSymbol f = parse_morph(a.positional[0]);
    int degree = std::stoi(a.positional[1]);
    WedgeSpace src({f.source()});
    AttachingVector x = AttachingVector::parse(src, degree, a.positional[2]);
    GroupElement y = compose(f, degree, x.entry(0));
    WedgeSpace tgt({f.target()});
    AttachingVector res(tgt, degree, {y});
    if (a.has("--json")) {
        out << json{{"schema", "chang/1"},
                    {"command", "compose"},
                    {"morph", f.to_string()},
                    {"degree", degree},
                    {"result", vector_json(res)}}
                   .dump()
            << "\n";
    } else {
        out << res.to_string() << " in pi(" << f.target().to_string() << ", " << degree << ")\n";
    }
    return 0;
}

// A short name when the canonical vector is one of the theorem's classes.
std::string class_tag(const AttachingVector& v) {
    std::size_t nonzero = 0, which = 0;
    for (std::size_t i = 0; i < v.wedge().size(); ++i)
        if (!v.entry(i).is_zero()) {
            ++nonzero;
            which = i;
        }
    if (nonzero != 1) return "";
    HomotopyGroupTable t = pi(v.wedge()[which], v.degree());
    for (std::size_t k = 0; k < t.group.size(); ++k) {
        long c = v.entry(which).coefficient(k);
        if (c == 0) continue;
        if (t.generators[k] == Gen::Nu) {
            if (c == 4 || c == 20) return "4nu";
            if (c == 12) return "eta3";
            if (c == 16 || c == 8) return "alpha1";
        }
    }
    return "";
}

int cmd_reduce(const Args& a, std::ostream& out) {
    if (a.positional.size() != 2) throw StructuralError("reduce needs <wedge> <vector>");
    WedgeSpace w = WedgeSpace::parse(a.positional[0]);
    int degree = std::stoi(a.value("--degree=", "8"));
    AttachingVector v = AttachingVector::parse(w, degree, a.positional[1]);
    RulePack pack = rule_pack();
    CanonOptions opts;
    opts.budget = env_budget(opts.budget);
    Reduction red = canonicalize(v, std::nullopt, pack, opts);
    if (a.has("--json")) {
        json trace = json::array();
        for (const auto& s : red.trace) trace.push_back({{"rule", s.rule_id}, {"to", s.detail}});
        out << json{{"schema", "chang/1"},
                    {"command", "reduce"},
                    {"wedge", w.to_string()},
                    {"canonical", vector_json(red.vector)},
                    {"tag", class_tag(red.vector)},
                    {"trace", trace}}
                   .dump()
            << "\n";
        return 0;
    }
    if (a.has("--trace"))
        for (const auto& s : red.trace) out << s.rule_id << " -> " << s.detail << "\n";
    out << red.vector.to_string();
    if (std::string tag = class_tag(red.vector); !tag.empty()) out << "  (" << tag << ")";
    out << "\n";
    return 0;
}

json decomposition_json(const WedgeDecomposition& dec) {
    json free = json::array();
    for (const auto& c : dec.free_summands) free.push_back(c.to_string());
    json j{{"case", dec.case_tag},
           {"symbolic", dec.symbolic},
           {"expanded", dec.expanded()},
           {"free", free}};
    if (dec.cone) {
        json carriers = json::array();
        for (const auto& c : dec.cone->first.summands()) carriers.push_back(c.to_string());
        j["cone"] = {{"carriers", carriers}, {"vector", vector_json(dec.cone->second)}};
    }
    if (!dec.notes.empty()) j["notes"] = dec.notes;
    return j;
}

int cmd_classify(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw StructuralError("classify needs <descriptor-file>");
    Locality loc = parse_locality(a);
    std::vector<std::string> files{a.positional[0]};
    if (std::string batch = a.value("--batch=", ""); !batch.empty()) {
        files.clear();
        std::istringstream in(read_file(batch));
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) files.push_back(line);
    }
    // batch inputs are independent; render each file's section, then emit in order
    std::vector<std::string> sections(files.size());
    std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (files.size() > 1)
#endif
    for (long long fi = 0; fi < static_cast<long long>(files.size()); ++fi) {
        try {
            const std::string& file = files[static_cast<std::size_t>(fi)];
            ManifoldInvariants inv = parse_descriptor(read_file(file));
            std::vector<WedgeDecomposition> decs = run_classify(inv, loc);
            std::ostringstream os;
            if (a.has("--json")) {
                json arr = json::array();
                for (const auto& dec : decs) arr.push_back(decomposition_json(dec));
                os << json{{"schema", "chang/1"},
                           {"command", "classify"},
                           {"descriptor", file},
                           {"locality", a.value("--local=", "total")},
                           {"candidates", arr}}
                          .dump()
                   << "\n";
            } else {
                if (files.size() > 1) os << "# " << file << "\n";
                for (const auto& dec : decs) {
                    os << (a.has("--expand") ? dec.expanded() : dec.symbolic) << " ["
                       << dec.case_tag << "]\n";
                    for (const auto& note : dec.notes) os << "  note: " << note << "\n";
                }
            }
            sections[static_cast<std::size_t>(fi)] = os.str();
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    for (std::size_t i = 0; i < sections.size(); ++i) {
        if (i) out << "\n";
        out << sections[i];
    }
    return 0;
}

int cmd_oracle(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw StructuralError("oracle needs <wedge>");
    WedgeSpace w = WedgeSpace::parse(a.positional[0]);
    int degree = std::stoi(a.value("--degree=", "8"));
    OracleOptions opts;
    opts.state_budget = std::stoull(a.value("--budget=", "1000000"));
    opts.state_budget = env_budget(opts.state_budget);
    opts.max_summands = std::stoull(a.value("--summands=", "3"));
    opts.parallel = a.has("--parallel");
    RulePack pack = rule_pack();
    OrbitReport report = cross_check(w, degree, pack, opts);
    if (a.has("--json")) {
        json orbits = json::array();
        for (const auto& [rep, size] : report.orbits)
            orbits.push_back({{"representative", rep.to_string()}, {"size", size}});
        json mism = json::array();
        for (const auto& v : report.mismatches) mism.push_back(v.to_string());
        out << json{{"schema", "chang/1"},
                    {"command", "oracle"},
                    {"wedge", w.to_string()},
                    {"degree", degree},
                    {"vectors", report.vector_count},
                    {"orbits", orbits},
                    {"mismatches", mism}}
                   .dump()
            << "\n";
    } else {
        out << report.to_string(a.has("--list"));
    }
    return report.mismatches.empty() ? 0 : 1;
}

int cmd_audit(const Args& a, std::ostream& out) {
    if (a.positional.size() != 1) throw StructuralError("audit needs <descriptor-file>");
    ManifoldInvariants inv = parse_descriptor(read_file(a.positional[0]));
    Locality loc = parse_locality(a);
    std::vector<WedgeDecomposition> decs = run_classify(inv, loc);
    bool all_ok = true;
    for (const auto& dec : decs) {
        bool ok = homology_audit(dec, inv);
        all_ok = all_ok && ok;
        out << (ok ? "OK   " : "FAIL ") << dec.symbolic << " [" << dec.case_tag << "]\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << kUsage;
        return 2;
    }
    const std::string& cmd = args[0];
    Args a = split_args(args, 1);
    try {
        if (cmd == "table") return cmd_table(a, out);
        if (cmd == "compose") return cmd_compose(a, out);
        if (cmd == "reduce") return cmd_reduce(a, out);
        if (cmd == "classify") return cmd_classify(a, out);
        if (cmd == "oracle") return cmd_oracle(a, out);
        if (cmd == "audit") return cmd_audit(a, out);
        if (cmd == "help" || cmd == "--help") {
            out << kUsage;
            return 0;
        }
        err << "unknown command: " << cmd << "\n" << kUsage;
        return 2;
    } catch (const FlagMismatch& e) {
        err << "flag mismatch: " << e.what() << "\n";
        return 3;
    } catch (const Indeterminate& e) {
        err << "indeterminate: " << e.what() << "\n";
        return 4;
    } catch (const InvalidSplitting& e) {
        err << "invalid splitting: " << e.what() << "\n";
        return 2;
    } catch (const NoCarrier& e) {
        err << "no carrier: " << e.what() << "\n";
        return 2;
    } catch (const UnknownComposite& e) {
        err << "unknown composite: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedTable& e) {
        err << "unsupported table: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace chang
