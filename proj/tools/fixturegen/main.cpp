// Regenerates the bundled fixture store from the ILSVRC class list.
//
//   synsetlink-fixturegen [--classes fixtures/ilsvrc/classes.tsv] [--out fixtures]

#include <iostream>

#include "CLI11.hpp"
#include "fixturegen.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the synthetic fixture store", "synsetlink-fixturegen"};
  std::string classes_path = "fixtures/ilsvrc/classes.tsv";
  std::string out = "fixtures";
  app.add_option("--classes", classes_path, "ILSVRC class list");
  app.add_option("--out", out, "Fixture root directory");
  CLI11_PARSE(app, argc, argv);

  try {
    auto classes = synsetlink::load_class_index(classes_path);
    synsetlink::fixturegen::generate(classes, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "fixtures written to " << out << '\n';
  return 0;
}
