#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfcy/cy.hpp"
#include "mfcy/residue.hpp"

namespace mfcy {

/// In-memory form of a problem file: one superpotential, named objects,
/// morphisms and chains, and an ordered task list. All invariants are
/// re-validated on load.
struct ProblemFile {
    std::vector<std::string> vars;
    SuperpotentialPtr w;
    VolumeForm omega;
    std::vector<std::string> object_names;          // insertion order
    std::map<std::string, FactorizationPtr> objects;
    std::vector<std::string> morphism_names;
    std::map<std::string, Morphism> morphisms;
    std::vector<std::string> chain_names;
    std::map<std::string, Chain> chains;
    std::string tasks_json;                         // raw task array, parsed per run

    static ProblemFile parse(const std::string& json_text);

    const FactorizationPtr& object(const std::string& name) const;
    const Morphism& morphism(const std::string& name) const;
    const Chain& chain(const std::string& name) const;
};

struct RunOptions {
    std::uint64_t budget = 10'000'000;
    unsigned threads = 1;
    std::uint64_t seed = 7;
    bool timings = false;      // timing fields break byte-determinism; off by default
};

struct ResultRecord {
    std::size_t task = 0;
    std::string command;
    std::string value_json;    // JSON fragment: scalar string, matrix, or chain sum
    std::map<std::string, std::string> diagnostics;
};

std::vector<ResultRecord> run(const ProblemFile& file, const RunOptions& opts);

enum class EmitFormat { json, text };

std::string emit(const std::vector<ResultRecord>& records, EmitFormat format);

/// Canonical re-serialization of a parsed problem file (fixed field order);
/// emit_problem(parse(emit_problem(parse(text)))) is a fixed point.
std::string emit_problem(const ProblemFile& file);

} // namespace mfcy
