#include "aurakit/model/pipeline.hpp"

namespace aurakit::model {

PipelineBinding PipelineBinding::from_input(std::string name) {
    PipelineBinding b;
    b.kind = Kind::input;
    b.ref = std::move(name);
    return b;
}

PipelineBinding PipelineBinding::from_param(std::string name) {
    PipelineBinding b;
    b.kind = Kind::param;
    b.ref = std::move(name);
    return b;
}

PipelineBinding PipelineBinding::from_node(std::string node, std::string output) {
    PipelineBinding b;
    b.kind = Kind::node_output;
    b.ref = std::move(node);
    b.output = std::move(output);
    return b;
}

PipelineBinding PipelineBinding::from_const(Value v) {
    PipelineBinding b;
    b.kind = Kind::constant;
    b.constant = std::move(v);
    return b;
}

namespace {

bool binding_equal(const PipelineBinding& a, const PipelineBinding& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case PipelineBinding::Kind::input:
        case PipelineBinding::Kind::param:
            return a.ref == b.ref;
        case PipelineBinding::Kind::node_output:
            return a.ref == b.ref && a.output == b.output;
        case PipelineBinding::Kind::constant:
            return a.constant == b.constant && a.constant.is_int() == b.constant.is_int();
    }
    return false;
}

}  // namespace

bool pipeline_equal(const Type2Pipeline& a, const Type2Pipeline& b) {
    if (a.nodes.size() != b.nodes.size() || a.outputs != b.outputs ||
        a.unused_inputs != b.unused_inputs)
        return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        const auto& na = a.nodes[i];
        const auto& nb = b.nodes[i];
        if (na.id != nb.id || na.op != nb.op || na.args.size() != nb.args.size()) return false;
        for (const auto& [k, v] : na.args) {
            auto it = nb.args.find(k);
            if (it == nb.args.end() || !binding_equal(v, it->second)) return false;
        }
    }
    return true;
}

}  // namespace aurakit::model
