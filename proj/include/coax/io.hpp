#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coax/core.hpp"
#include "coax/prooftree.hpp"
#include "coax/verify.hpp"

namespace coax::io {

/// System files, one directive per line, judgements separated by whitespace:
///
///     universe j1 j2 ...      # optional extra members
///     rule c <- p1 p2 ...     # `rule c` or `rule c <-` is an axiom
///     axiom c
///     coaxiom c
///
/// The universe is every judgement mentioned. Duplicate rules are dropped
/// and reported through `warnings`. Throws ParseError.
InferenceSystem parse_system(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Inverse of parse_system up to whitespace and ordering.
std::string emit_system(const InferenceSystem& sys);

/// Whitespace-separated judgements over `u`; `#` comments. Throws ParseError
/// for judgements outside the universe.
JudgementSet parse_judgements(std::string_view text, const UniversePtr& u);

std::string read_file(const std::string& path);

// Renderers. Trees expanding beyond `node_cap` positions throw CapExceeded.
std::string set_json(const JudgementSet& s);
std::string set_text(const JudgementSet& s);
std::string interpretation_json(const Interpretation& in, bool with_trace);
std::string interpretation_text(const Interpretation& in, bool with_trace);

std::string tree_json(const PathTree& t, std::size_t node_cap = 100000);
std::string tree_text(const PathTree& t, std::size_t node_cap = 100000);
std::string tree_dot(const PathTree& t, std::size_t node_cap = 100000);

std::string graph_json(const ProofGraph& g);
std::string graph_text(const ProofGraph& g);
std::string graph_dot(const ProofGraph& g);

std::string verdict_json(const InferenceSystem& sys, const Verdict& v);
std::string verdict_text(const InferenceSystem& sys, const Verdict& v);

} // namespace coax::io
