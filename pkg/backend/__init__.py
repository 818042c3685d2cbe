"""Backend services package"""
