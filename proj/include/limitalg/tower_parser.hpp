#pragma once

// Text format for towers (and appended action blocks):
//
//   level 0 = [2]
//   level 1 = [2,4]
//   embed 0 -> 1 {
//     target 0 : (0,1) (0,2)
//     target 1 : (0,1) (0,2) (0,1) (0,2)
//   }
//   repeat            # or: spawn G
//   action g order 2 { level 0 -> 0 { target 0 : (0,1) (0,2) } }

#include "limitalg/tower.hpp"

#include <string>
#include <vector>

namespace limitalg {

class ParseError : public TowerError {
public:
    ParseError(int line, int col, const std::string& msg);
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

struct ActionLevelMap {
    int from = 0;
    int to = 0;
    std::vector<Word> words;
};

struct ActionBlock {
    std::string generator;
    int order = 1;
    std::vector<ActionLevelMap> maps;
};

struct TowerDocument {
    TowerSpec tower;
    std::vector<ActionBlock> actions;
};

TowerDocument parse_document(const std::string& text, const std::string& name = {});
TowerSpec parse_tower(const std::string& text, const std::string& name = {});

std::string to_text(const TowerSpec& tower);
std::string to_text(const std::vector<Word>& words, const std::string& indent);

/// Builtin towers: standard-2, refinement-2, paper-example-taf.
const std::vector<std::string>& preset_names();
/// Source text of a preset; throws TowerError for unknown names.
const std::string& preset_source(const std::string& name);
TowerSpec preset_tower(const std::string& name);

/// A preset name, or a path to a tower file.
TowerDocument load_document(const std::string& name_or_path);

} // namespace limitalg
