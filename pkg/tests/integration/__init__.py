"""
Integration tests for derivator-combinatorics.

These tests run the full claim corpus and drive the command line on
files written to a temporary directory.

To run only integration tests:
    pytest tests/integration -m integration

To skip them:
    pytest -m "not integration"
"""
