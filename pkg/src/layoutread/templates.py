"""Instruction template pools for the four pretraining tasks.

The localization, layout-reconstruction and page-parser pools are copied
character for character (including typographic apostrophes) from the
published template tables. The text-recognition pool has no published
table; it is authored here.
"""

# Authored for this package, not taken from any published table.
TEXT_RECOGNITION_TEMPLATES = (
    'What text appears in this image?',
    'Please read out all the text shown in the image.',
    'Can you recognize and transcribe every word in the image?',
    'Identify all the text in the image.',
    'Could you extract all of the words visible in this image?',
    'Transcribe the text contained in the image.',
    'What are the words written in the image?',
    'Please list all the text you can find in the image.',
    'Kindly read the text in the image and write it down.',
    'Recognize the text in this picture and report it.',
)

TEXT_LOCALIZATION_TEMPLATES = (
    'Could you locate the text in the image and furnish the coordinates [xmin, ymin, xmax, ymax] for each text block?',
    'Please recognize all the text within the image and supply the coordinates [xmin, ymin, xmax, ymax] for each text element.',
    'Can you identify and extract all the text from the image, and include the coordinates [xmin, ymin, xmax, ymax] for each text block?',
    'I would like you to recognize the text within the image and provide the bounding box [xmin, ymin, xmax, ymax] for each piece of text.',
    'Kindly identify and extract text from the image, and supply the coordinates [xmin, ymin, xmax, ymax] for each text portion.',
    'Can you recognize all the text present in the image and provide the corresponding bounding boxes or coordinates [xmin, ymin, xmax, ymax]?',
    'I’m looking for you to detect and list all text within the image, accompanied by their bounding box coordinates [xmin, ymin, xmax, ymax].',
    'Please analyze the image for text, and for each text segment, provide the bounding box coordinates [xmin, ymin, xmax, ymax].',
    'I’d appreciate it if you could identify and provide the coordinates [xmin, ymin, xmax, ymax] for all text found in the image.',
    'Kindly pinpoint the text in the image and provide the coordinates [xmin, ymin, xmax, ymax] for each text block.',
)

LAYOUT_RECONSTRUCTION_TEMPLATES = (
    'Given the OCR results, could you recover the layout information in the image and reorganize the texts?',
    'Using the OCR results, can you retrieve the layout information from the image and rearrange the texts?',
    "Can you utilize the OCR results to extract the image's layout information and restructure the texts?",
    'Given the OCR results, would you be able to reconstruct the layout of the image and reorganize the text?',
    'Could you use the OCR results to recover the layout details from the image and then rearrange the text?',
    'Based on the OCR results, can you restore the layout information in the image and reposition the texts?',
    "With the OCR results, could you recapture the image's layout information and reorder the texts?",
    'Using the OCR data, can you regain the layout information from the image and reshuffle the text?',
    'Can you interpret the OCR results to retrieve the layout information of the image and reorganize the text accordingly?',
    "Could you use the OCR findings to recover the image's layout information and restructure the texts?",
)

PAGE_PARSER_TEMPLATES = (
    'Could you extract the layout details from the image provided and rearrange the text accordingly?',
    "Please analyze the image's structure and reformat the text based on its layout.",
    'Can you decipher the layout of the image and restructure the text elements as they appear?',
    'I need you to interpret the layout information within the image and reposition the texts to mirror that layout.',
    'Would you be able to delineate the layout from the given image and reorder the text content accordingly?',
    'I request that you retrieve the spatial arrangement of the image and reconfigure the text to align with it.',
    'Please deduce the compositional layout of the image and systematically reassemble the text.',
    'Can you outline the image layout and reconstruct the text placements to correspond with it?',
    "I'm looking for an analysis of the image's layout so you can reorganize the text segments based on their original positioning.",
    'Kindly dissect the layout patterns in the image and resequence the text in harmony with those patterns.',
)
