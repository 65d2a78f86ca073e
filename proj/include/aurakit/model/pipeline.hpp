#pragma once

#include <map>
#include <string>
#include <vector>

#include "aurakit/model/value.hpp"

namespace aurakit::model {

// One argument of a pipeline node: a pipeline input, a manifest parameter,
// an earlier node's output, or an inline constant.
struct PipelineBinding {
    enum class Kind { input, param, node_output, constant };

    Kind kind = Kind::constant;
    std::string ref;     // input/param name or node id
    std::string output;  // node output name (node_output only)
    Value constant;

    static PipelineBinding from_input(std::string name);
    static PipelineBinding from_param(std::string name);
    static PipelineBinding from_node(std::string node, std::string output);
    static PipelineBinding from_const(Value v);
};

struct PipelineNode {
    std::string id;
    std::string op;  // analysis-op name
    std::map<std::string, PipelineBinding> args;
};

struct Type2Pipeline {
    std::vector<PipelineNode> nodes;
    // manifest output name -> (node id, node output name)
    std::map<std::string, std::pair<std::string, std::string>> outputs;
    // manifest inputs deliberately consumed by no node
    std::vector<std::string> unused_inputs;
};

bool pipeline_equal(const Type2Pipeline& a, const Type2Pipeline& b);

}  // namespace aurakit::model
