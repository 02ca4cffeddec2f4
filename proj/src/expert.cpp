#include "sparsebn/expert.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace sparsebn {

bool valid_node_name(std::string_view name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '_';
    });
}

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(std::string_view field, const std::string& source,
                                     std::size_t line) {
    std::vector<std::string> out;
    field = trim(field);
    if (field.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = field.find(',', start);
        auto name = trim(field.substr(start, comma == std::string_view::npos ? field.npos
                                                                             : comma - start));
        if (!valid_node_name(name))
            throw ParseError(source, line, "invalid node name '" + std::string(name) + "'");
        out.emplace_back(name);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out;
}

}  // namespace

std::vector<ExpertStatement> parse_statements(std::istream& in, const std::string& source,
                                              std::vector<std::size_t>* lines) {
    std::vector<ExpertStatement> out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::istringstream words{std::string(line)};
        std::string keyword;
        words >> keyword;
        if (lines) lines->push_back(line_no);

        if (keyword == "indep") {
            std::string_view rest = trim(line.substr(keyword.size()));
            std::vector<std::string_view> fields;
            std::size_t start = 0;
            while (true) {
                const auto bar = rest.find('|', start);
                fields.push_back(rest.substr(start, bar == rest.npos ? rest.npos : bar - start));
                if (bar == rest.npos) break;
                start = bar + 1;
            }
            if (fields.size() != 3)
                throw ParseError(source, line_no, "indep expects three '|'-separated fields");
            Independence st{split_names(fields[0], source, line_no),
                            split_names(fields[1], source, line_no),
                            split_names(fields[2], source, line_no)};
            if (st.x.empty() || st.y.empty())
                throw ParseError(source, line_no, "indep requires non-empty first and last fields");
            out.emplace_back(std::move(st));
            continue;
        }

        std::vector<std::string> args;
        for (std::string w; words >> w;) {
            if (!valid_node_name(w))
                throw ParseError(source, line_no, "invalid node name '" + w + "'");
            args.push_back(std::move(w));
        }
        auto expect = [&](std::size_t n) {
            if (args.size() != n)
                throw ParseError(source, line_no,
                                 keyword + " expects " + std::to_string(n) + " name(s)");
        };
        if (keyword == "hypothesis") {
            expect(1);
            out.emplace_back(Hypothesis{args[0]});
        } else if (keyword == "evidence") {
            expect(1);
            out.emplace_back(Evidence{args[0]});
        } else if (keyword == "cause") {
            expect(2);
            out.emplace_back(CauseOf{args[0], args[1]});
        } else if (keyword == "causedby") {
            expect(2);
            out.emplace_back(CausedBy{args[0], args[1]});
        } else {
            throw ParseError(source, line_no, "unknown statement '" + keyword + "'");
        }
    }
    return out;
}

std::string to_string(const ExpertStatement& s) {
    struct {
        std::string operator()(const Hypothesis& h) const { return "hypothesis " + h.node; }
        std::string operator()(const Evidence& e) const { return "evidence " + e.node; }
        std::string operator()(const CauseOf& c) const { return "cause " + c.cause + " " + c.effect; }
        std::string operator()(const CausedBy& c) const {
            return "causedby " + c.effect + " " + c.cause;
        }
        std::string operator()(const Independence& i) const {
            return "indep " + join(i.x) + " | " + join(i.z) + " | " + join(i.y);
        }
    } visitor;
    return std::visit(visitor, s);
}

std::string_view to_string(ContradictionKind k) {
    switch (k) {
        case ContradictionKind::CauseCycle: return "CauseCycle";
        case ContradictionKind::HypothesisWithCause: return "HypothesisWithCause";
        case ContradictionKind::EvidenceWithEffect: return "EvidenceWithEffect";
        case ContradictionKind::HypothesisEvidenceClash: return "HypothesisEvidenceClash";
        case ContradictionKind::UnknownName: return "UnknownName";
        case ContradictionKind::InvalidIndependence: return "InvalidIndependence";
    }
    return "?";
}

namespace {

std::string describe(const ContradictionReport& report) {
    std::string msg = std::to_string(report.size()) + " contradiction(s) in expert information";
    for (const auto& c : report) msg += "\n  " + std::string(to_string(c.kind)) + ": " + c.detail;
    return msg;
}

}  // namespace

ContradictionError::ContradictionError(ContradictionReport report)
    : std::runtime_error(describe(report)), report_(std::move(report)) {}

ExpertInfo::ExpertInfo(const std::vector<std::string>& universe) : dag_(universe) {
    refresh_ancestors();
}

void ExpertInfo::refresh_ancestors() {
    ancestors_.clear();
    for (NodeId v = 0; v < dag_.node_count(); ++v) ancestors_.push_back(dag_.ancestors(v));
}

ExpertInfo compile(const std::vector<ExpertStatement>& statements,
                   const std::vector<std::string>& universe) {
    ExpertInfo info(universe);
    const Dag& names = info.dag_;
    ContradictionReport report;
    std::size_t index = 0;

    auto known = [&](const std::string& name) {
        if (names.contains(name)) return true;
        report.push_back({ContradictionKind::UnknownName, {name},
                          "'" + name + "' is not a variable of the model", index});
        return false;
    };
    auto to_set = [&](const std::vector<std::string>& ns, bool& ok) {
        std::vector<NodeId> ids;
        for (const auto& n : ns) {
            if (known(n)) ids.push_back(names.id(n));
            else ok = false;
        }
        return NodeSet::from_unsorted(std::move(ids));
    };

    struct Cause {
        NodeId cause;
        NodeId effect;
        std::size_t statement;
    };
    std::vector<Cause> causes;
    std::vector<std::size_t> label_statement(names.node_count(), 0);
    for (; index < statements.size(); ++index) {
        const auto& st = statements[index];
        if (const auto* h = std::get_if<Hypothesis>(&st)) {
            if (!known(h->node)) continue;
            const NodeId v = names.id(h->node);
            if (!info.hypotheses_.contains(v) && info.evidence_.contains(v))
                report.push_back({ContradictionKind::HypothesisEvidenceClash, {h->node},
                                  "'" + h->node + "' declared both hypothesis and evidence",
                                  index});
            if (!info.hypotheses_.contains(v)) label_statement[v] = index;
            info.hypotheses_.insert(v);
        } else if (const auto* e = std::get_if<Evidence>(&st)) {
            if (!known(e->node)) continue;
            const NodeId v = names.id(e->node);
            if (!info.evidence_.contains(v) && info.hypotheses_.contains(v))
                report.push_back({ContradictionKind::HypothesisEvidenceClash, {e->node},
                                  "'" + e->node + "' declared both hypothesis and evidence",
                                  index});
            if (!info.evidence_.contains(v)) label_statement[v] = index;
            info.evidence_.insert(v);
        } else if (const auto* c = std::get_if<CauseOf>(&st)) {
            if (known(c->cause) & known(c->effect))
                causes.push_back({names.id(c->cause), names.id(c->effect), index});
        } else if (const auto* c = std::get_if<CausedBy>(&st)) {
            if (known(c->cause) & known(c->effect))
                causes.push_back({names.id(c->cause), names.id(c->effect), index});
        } else if (const auto* ind = std::get_if<Independence>(&st)) {
            bool ok = true;
            IndependenceTriple t{to_set(ind->x, ok), to_set(ind->z, ok), to_set(ind->y, ok)};
            if (!ok) continue;
            try {
                validate_query(names.node_count(), {t.x, t.z, t.y});
                info.declared_.push_back(std::move(t));
            } catch (const InvalidQuery& err) {
                report.push_back({ContradictionKind::InvalidIndependence, ind->x,
                                  to_string(st) + ": " + err.what(), index});
            }
        }
    }

    for (const auto& [p, c, at] : causes) {
        if (p != c && info.dag_.has_arc(p, c)) continue;
        try {
            info.dag_.add_arc(p, c);
        } catch (const CycleError& err) {
            std::vector<std::string> cycle;
            for (NodeId v : err.cycle()) cycle.push_back(names.name(v));
            report.push_back({ContradictionKind::CauseCycle, std::move(cycle), err.what(), at});
            continue;
        }
        const std::size_t blame = std::max(at, label_statement[p]);
        if (info.hypotheses_.contains(c))
            report.push_back({ContradictionKind::HypothesisWithCause,
                              {names.name(c), names.name(p)},
                              "hypothesis '" + names.name(c) + "' is caused by '" +
                                  names.name(p) + "'",
                              std::max(at, label_statement[c])});
        if (info.evidence_.contains(p))
            report.push_back({ContradictionKind::EvidenceWithEffect,
                              {names.name(p), names.name(c)},
                              "evidence '" + names.name(p) + "' is a cause of '" +
                                  names.name(c) + "'",
                              blame});
    }

    if (!report.empty()) throw ContradictionError(std::move(report));
    info.refresh_ancestors();
    return info;
}

Priority priority_compare(const ExpertInfo& info, NodeId a, NodeId b) {
    if (a == b) return Priority::Same;
    const bool hyp_a = info.hypothesis_set().contains(a);
    const bool hyp_b = info.hypothesis_set().contains(b);
    if (hyp_a != hyp_b) return hyp_a ? Priority::Higher : Priority::Lower;
    const bool ev_a = info.evidence_set().contains(a);
    const bool ev_b = info.evidence_set().contains(b);
    if (ev_a != ev_b) return ev_a ? Priority::Lower : Priority::Higher;
    if (info.is_ancestor(a, b)) return Priority::Higher;
    if (info.is_ancestor(b, a)) return Priority::Lower;
    return Priority::Same;
}

NodeSet maximal_candidates(const ExpertInfo& info, const NodeSet& candidates) {
    std::vector<NodeId> out;
    for (NodeId c : candidates) {
        const bool outranked = std::any_of(candidates.begin(), candidates.end(), [&](NodeId d) {
            return priority_compare(info, d, c) == Priority::Higher;
        });
        if (!outranked) out.push_back(c);
    }
    return NodeSet::from_sorted(std::move(out));
}

}  // namespace sparsebn
