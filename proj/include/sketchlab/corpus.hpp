#pragma once

#include <string>
#include <vector>

namespace sketchlab {

struct CorpusFile {
  std::string name;
  std::string text;
};

const std::vector<CorpusFile>& corpus_files();

}  // namespace sketchlab
