"""Test suite for solvknot"""
