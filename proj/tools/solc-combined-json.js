#!/usr/bin/env node
// vulnfuse: multimodal smart-contract vulnerability detection
// Copyright 2026 The vulnfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Minimal `solc --combined-json bin,bin-runtime` stand-in backed by the solc npm package
// (solcjs). Lets machines without a native solc produce the output format the C++ adapter
// parses. Install the compiler next to this script with `npm install solc@0.8.26`.
//
//   node solc-combined-json.js --version
//   node solc-combined-json.js --combined-json bin,bin-runtime [--optimize] FILE.sol

'use strict';

const fs = require('fs');
const path = require('path');

function loadSolc() {
  const candidates = [
    path.join(__dirname, 'node_modules', 'solc'),
    'solc',
  ];
  for (const c of candidates) {
    try {
      return require(c);
    } catch (e) {
      // try next
    }
  }
  process.stderr.write('solc npm package not found; run `npm install solc` in ' + __dirname + '\n');
  process.exit(127);
}

function main(argv) {
  const solc = loadSolc();
  if (argv.includes('--version')) {
    process.stdout.write('solc, the solidity compiler commandline interface\nVersion: ' +
        solc.version() + '\n');
    return 0;
  }

  const optimize = argv.includes('--optimize');
  const files = argv.filter((a, i) => !a.startsWith('--') && argv[i - 1] !== '--combined-json');
  if (files.length !== 1) {
    process.stderr.write('expected exactly one source file\n');
    return 1;
  }
  const file = files[0];
  const input = {
    language: 'Solidity',
    sources: {[file]: {content: fs.readFileSync(file, 'utf8')}},
    settings: {
      optimizer: {enabled: optimize, runs: 200},
      outputSelection: {'*': {'*': ['evm.bytecode.object', 'evm.deployedBytecode.object']}},
    },
  };
  const output = JSON.parse(solc.compile(JSON.stringify(input)));
  const errors = (output.errors || []).filter((e) => e.severity === 'error');
  if (errors.length > 0) {
    for (const e of errors) process.stderr.write((e.formattedMessage || e.message) + '\n');
    return 1;
  }

  const contracts = {};
  for (const [src, byName] of Object.entries(output.contracts || {})) {
    for (const [name, c] of Object.entries(byName)) {
      contracts[src + ':' + name] = {
        'bin': c.evm.bytecode.object,
        'bin-runtime': c.evm.deployedBytecode.object,
      };
    }
  }
  process.stdout.write(JSON.stringify({contracts, version: solc.version()}) + '\n');
  return 0;
}

process.exit(main(process.argv.slice(2)));
