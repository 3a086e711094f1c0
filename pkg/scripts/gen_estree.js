// Regenerates ESTree JSON fixtures with Esprima 4 (loc enabled).
// usage: NODE_PATH=<dir containing esprima> node scripts/gen_estree.js file.js...
var fs = require('fs');
var esprima = require('esprima');

process.argv.slice(2).forEach(function (path) {
  var src = fs.readFileSync(path, 'utf8');
  var ast = esprima.parseScript(src, { loc: true });
  fs.writeFileSync(path.replace(/\.js$/, '.json'), JSON.stringify(ast, null, 1) + '\n');
});
