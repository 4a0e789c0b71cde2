# Adjust
# Main package initialization
