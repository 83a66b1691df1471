"""Command modules for lamedisc CLI."""
